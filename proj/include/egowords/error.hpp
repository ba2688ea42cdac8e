#pragma once

#include <stdexcept>
#include <string>

namespace egowords {

// Base of every error raised by the library. `stage()` names the pipeline
// stage that failed so the CLI can print a tagged diagnostic.
class Error : public std::runtime_error {
public:
    Error(std::string stage, const std::string& what)
        : std::runtime_error(what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

#define EGOWORDS_DEFINE_ERROR(Name)                                         \
    class Name : public Error {                                             \
    public:                                                                 \
        using Error::Error;                                                 \
    };

EGOWORDS_DEFINE_ERROR(InputError)
EGOWORDS_DEFINE_ERROR(EmptyCorpusError)
EGOWORDS_DEFINE_ERROR(ArgumentError)
EGOWORDS_DEFINE_ERROR(DegenerateInputError)
EGOWORDS_DEFINE_ERROR(InsufficientDataError)
EGOWORDS_DEFINE_ERROR(ConfigError)
EGOWORDS_DEFINE_ERROR(ClassificationError)
EGOWORDS_DEFINE_ERROR(DependencyError)

#undef EGOWORDS_DEFINE_ERROR

} // namespace egowords
