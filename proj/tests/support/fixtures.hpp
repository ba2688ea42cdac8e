#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fixtures {

inline std::filesystem::path dir() { return EGOWORDS_FIXTURES; }

struct TokenLemmaRow {
    int row = 0;
    std::string text;
    std::vector<std::string> expected;
};

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(' ');
        if (b != std::string::npos) out.push_back(item.substr(b));
    }
    return out;
}

inline std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, '\t')) f.push_back(cell);
        rows.push_back(f);
    }
    return rows;
}

inline std::vector<TokenLemmaRow> token_lemma_rows() {
    std::vector<TokenLemmaRow> out;
    for (const auto& f : read_tsv(dir() / "token_lemma.tsv")) out.push_back({std::stoi(f.at(0)), f.at(1), split_list(f.at(2))});
    return out;
}

// row -> observed output for rows that knowingly diverge.
inline std::map<int, std::vector<std::string>> token_lemma_deviations() {
    std::map<int, std::vector<std::string>> out;
    for (const auto& f : read_tsv(dir() / "token_lemma_deviations.tsv")) out[std::stoi(f.at(0))] = split_list(f.at(1));
    return out;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace fixtures
