// Shipped English stop-word list and rule/lookup lemmatizer.

#include "egowords/error.hpp"
#include "egowords/extract.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

namespace egowords {

namespace {

// builtin-en-v1: classic English function words, auxiliary and light verbs,
// pronoun/quantifier forms, and the clitic pieces emitted by the tokenizer.
constexpr std::string_view kBuiltinStopwords[] = {
    "a", "about", "above", "across", "after", "afterwards", "again", "against", "all", "almost",
    "alone", "along", "already", "also", "although", "always", "am", "among", "amongst", "an",
    "and", "another", "any", "anybody", "anyhow", "anyone", "anything", "anyway", "anywhere",
    "are", "around", "as", "at", "back", "be", "became", "because", "become", "becomes",
    "becoming", "been", "before", "beforehand", "behind", "being", "below", "beside", "besides",
    "between", "beyond", "both", "but", "by", "ca", "can", "cannot", "could", "did", "do",
    "does", "doing", "done", "down", "due", "during", "each", "either", "else", "elsewhere",
    "enough", "etc", "even", "ever", "every", "everybody", "everyone", "everything",
    "everywhere", "except", "few", "for", "former", "formerly", "from", "further", "get",
    "gets", "getting", "give", "gives", "go", "goes", "going", "gonna", "got", "had", "has",
    "have", "having", "he", "hence", "her", "here", "hereafter", "hereby", "herein", "hereupon",
    "hers", "herself", "him", "himself", "his", "how", "however", "i", "if", "in", "indeed",
    "into", "is", "it", "its", "itself", "just", "least", "less", "let", "lets", "made", "make",
    "makes", "many", "may", "me", "meanwhile", "might", "mine", "more", "moreover", "most",
    "mostly", "much", "must", "my", "myself", "namely", "neither", "never", "nevertheless",
    "next", "no", "nobody", "none", "noone", "nor", "not", "nothing", "now", "nowhere", "of",
    "off", "often", "oh", "ok", "okay", "on", "once", "one", "only", "onto", "or", "other",
    "others", "otherwise", "our", "ours", "ourselves", "out", "over", "own", "per", "perhaps",
    "please", "put", "quite", "rather", "re", "really", "regarding", "same", "say", "says",
    "said", "saying", "see", "seem", "seemed", "seeming", "seems", "several", "sha", "she",
    "should", "since", "so", "some", "somebody", "somehow", "someone", "something", "sometime",
    "sometimes", "somewhere", "still", "such", "take", "takes", "than", "that", "the", "their",
    "theirs", "them", "themselves", "then", "thence", "there", "thereafter", "thereby",
    "therefore", "therein", "thereupon", "these", "they", "this", "those", "though", "through",
    "throughout", "thru", "thus", "to", "together", "too", "toward", "towards", "under",
    "unless", "until", "up", "upon", "us", "use", "used", "using", "very", "via", "want",
    "was", "we", "well", "were", "what", "whatever", "when", "whence", "whenever", "where",
    "whereafter", "whereas", "whereby", "wherein", "whereupon", "wherever", "whether", "which",
    "while", "whither", "who", "whoever", "whole", "whom", "whose", "why", "will", "with",
    "within", "without", "wo", "would", "yeah", "yes", "yet", "you", "your", "yours",
    "yourself", "yourselves", "n't", "'s", "'re", "'ve", "'ll", "'d", "'m", "amp", "rt", "via"};

const std::unordered_map<std::string_view, std::string_view>& exceptions() {
    static const std::unordered_map<std::string_view, std::string_view> table = {
        // irregular verbs
        {"am", "be"}, {"are", "be"}, {"is", "be"}, {"was", "be"}, {"were", "be"}, {"been", "be"},
        {"being", "be"}, {"has", "have"}, {"had", "have"}, {"having", "have"}, {"does", "do"},
        {"did", "do"}, {"done", "do"}, {"doing", "do"}, {"ran", "run"}, {"ate", "eat"},
        {"eaten", "eat"}, {"went", "go"}, {"gone", "go"}, {"goes", "go"}, {"saw", "see"},
        {"seen", "see"}, {"took", "take"}, {"taken", "take"}, {"gave", "give"}, {"given", "give"},
        {"came", "come"}, {"became", "become"}, {"got", "get"}, {"gotten", "get"}, {"made", "make"},
        {"said", "say"}, {"told", "tell"}, {"thought", "think"}, {"brought", "bring"},
        {"bought", "buy"}, {"caught", "catch"}, {"taught", "teach"}, {"felt", "feel"},
        {"kept", "keep"}, {"left", "leave"}, {"lost", "lose"}, {"met", "meet"}, {"paid", "pay"},
        {"sent", "send"}, {"spent", "spend"}, {"stood", "stand"}, {"understood", "understand"},
        {"won", "win"}, {"wrote", "write"}, {"written", "write"}, {"began", "begin"},
        {"begun", "begin"}, {"broke", "break"}, {"broken", "break"}, {"chose", "choose"},
        {"chosen", "choose"}, {"drove", "drive"}, {"driven", "drive"}, {"fell", "fall"},
        {"fallen", "fall"}, {"flew", "fly"}, {"flown", "fly"}, {"forgot", "forget"},
        {"forgotten", "forget"}, {"grew", "grow"}, {"grown", "grow"}, {"knew", "know"},
        {"known", "know"}, {"rode", "ride"}, {"ridden", "ride"}, {"sang", "sing"},
        {"sung", "sing"}, {"spoke", "speak"}, {"spoken", "speak"}, {"stole", "steal"},
        {"stolen", "steal"}, {"swam", "swim"}, {"threw", "throw"}, {"thrown", "throw"},
        {"woke", "wake"}, {"woken", "wake"}, {"wore", "wear"}, {"worn", "wear"},
        {"built", "build"}, {"held", "hold"}, {"heard", "hear"}, {"led", "lead"},
        {"meant", "mean"}, {"sold", "sell"}, {"slept", "sleep"}, {"found", "find"},
        {"fought", "fight"}, {"hid", "hide"}, {"hidden", "hide"}, {"drew", "draw"},
        {"drawn", "draw"}, {"drank", "drink"}, {"drunk", "drink"}, {"shook", "shake"},
        {"shaken", "shake"}, {"sought", "seek"}, {"struck", "strike"}, {"fed", "feed"},
        {"fled", "flee"}, {"bled", "bleed"}, {"sped", "speed"}, {"dealt", "deal"},
        {"dying", "die"}, {"died", "die"}, {"lying", "lie"}, {"lied", "lie"}, {"tied", "tie"},
        {"tying", "tie"}, {"agreed", "agree"}, {"freed", "free"}, {"seeing", "see"},
        {"changing", "change"}, {"changed", "change"}, {"arranged", "arrange"},
        {"arranging", "arrange"}, {"challenged", "challenge"}, {"challenging", "challenge"},
        {"exchanged", "exchange"}, {"charged", "charge"}, {"charging", "charge"},
        {"writing", "write"}, {"inviting", "invite"}, {"invited", "invite"},
        {"excited", "excite"}, {"united", "unite"}, {"voting", "vote"}, {"noted", "note"},
        {"hoping", "hope"}, {"hoped", "hope"}, {"closing", "close"}, {"closed", "close"},
        {"losing", "lose"}, {"caused", "cause"}, {"causing", "cause"},
        // -ies / -ves / irregular plurals
        {"movies", "movie"}, {"cookies", "cookie"}, {"zombies", "zombie"}, {"selfies", "selfie"},
        {"rookies", "rookie"}, {"brownies", "brownie"}, {"hoodies", "hoodie"},
        {"calories", "calorie"}, {"pies", "pie"}, {"ties", "tie"}, {"lies", "lie"},
        {"dies", "die"}, {"goalies", "goalie"}, {"series", "series"}, {"species", "specie"},
        {"lives", "life"}, {"wives", "wife"}, {"knives", "knife"}, {"wolves", "wolf"},
        {"leaves", "leaf"}, {"halves", "half"}, {"shelves", "shelf"}, {"thieves", "thief"},
        {"men", "man"}, {"women", "woman"}, {"children", "child"}, {"people", "people"},
        {"feet", "foot"}, {"teeth", "tooth"}, {"mice", "mouse"}, {"geese", "goose"},
        {"data", "data"}, {"media", "media"}, {"criteria", "criterion"}, {"phenomena", "phenomenon"},
        {"news", "news"}, {"buses", "bus"}, {"viruses", "virus"}, {"bonuses", "bonus"},
        {"campuses", "campus"}, {"focuses", "focus"}, {"statuses", "status"},
        // comparatives and superlatives
        {"better", "good"}, {"best", "good"}, {"worse", "bad"}, {"worst", "bad"},
        {"latest", "late"}, {"later", "late"}, {"bigger", "big"}, {"biggest", "big"},
        {"larger", "large"}, {"largest", "large"}, {"smaller", "small"}, {"smallest", "small"},
        {"greater", "great"}, {"greatest", "great"}, {"higher", "high"}, {"highest", "high"},
        {"longer", "long"}, {"longest", "long"}, {"stronger", "strong"}, {"strongest", "strong"},
        {"older", "old"}, {"oldest", "old"}, {"elder", "old"}, {"eldest", "old"},
        {"newer", "new"}, {"newest", "new"}, {"faster", "fast"}, {"fastest", "fast"},
        {"harder", "hard"}, {"hardest", "hard"}, {"closer", "close"}, {"closest", "close"},
        {"nicer", "nice"}, {"nicest", "nice"}, {"lower", "low"}, {"lowest", "low"},
        {"deeper", "deep"}, {"deepest", "deep"}, {"cheaper", "cheap"}, {"cheapest", "cheap"},
        {"richer", "rich"}, {"richest", "rich"}, {"smarter", "smart"}, {"smartest", "smart"},
        {"younger", "young"}, {"youngest", "young"}, {"darker", "dark"}, {"darkest", "dark"},
        {"wider", "wide"}, {"widest", "wide"}, {"safer", "safe"}, {"safest", "safe"},
        {"hotter", "hot"}, {"hottest", "hot"}, {"colder", "cold"}, {"coldest", "cold"},
        {"warmer", "warm"}, {"warmest", "warm"}, {"taller", "tall"}, {"tallest", "tall"},
        {"shorter", "short"}, {"shortest", "short"}, {"brighter", "bright"},
        {"brightest", "bright"}, {"quicker", "quick"}, {"quickest", "quick"},
        {"slower", "slow"}, {"slowest", "slow"}, {"lighter", "light"}, {"lightest", "light"},
        {"sweeter", "sweet"}, {"sweetest", "sweet"}, {"weirder", "weird"}, {"weirdest", "weird"},
        {"happier", "happy"}, {"easier", "easy"}, {"earlier", "early"}, {"busier", "busy"},
        {"funnier", "funny"}, {"crazier", "crazy"}, {"prettier", "pretty"}, {"heavier", "heavy"},
        {"angrier", "angry"}, {"luckier", "lucky"}, {"healthier", "healthy"},
        {"wealthier", "wealthy"}, {"scarier", "scary"}, {"uglier", "ugly"}, {"tinier", "tiny"},
    };
    return table;
}

// Words that look inflected but are base forms.
const std::unordered_set<std::string_view>& invariant_words() {
    static const std::unordered_set<std::string_view> words = {
        "morning", "evening", "wedding", "ceiling", "pudding", "sibling", "darling", "during",
        "something", "nothing", "anything", "everything", "hundred", "sacred", "naked", "wicked",
        "kindred", "always", "perhaps", "focus", "bonus", "virus", "campus", "status", "census",
        "chaos", "canvas", "atlas", "alias", "bias", "lens", "gas", "bus", "yes", "thus",
        "famous", "nervous", "various", "previous", "serious", "glorious", "news", "whereas",
        "analysis", "crisis", "basis", "thesis", "tennis", "christmas", "texas", "paris",
    };
    return words;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool has_vowel(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return is_vowel(c) || c == 'y'; });
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Restores the base form of a stem left by stripping -ing or -ed.
std::string restore_verb_stem(std::string stem) {
    const std::size_t n = stem.size();
    if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
        std::string_view("lsz").find(stem[n - 1]) == std::string_view::npos) {
        stem.pop_back(); // running -> run, stopped -> stop
        return stem;
    }
    const char last = stem.back();
    const bool needs_e =
        last == 'v' || last == 'z' || (last == 'c' && n >= 3) || ends_with(stem, "dg") ||
        (ends_with(stem, "at") && n >= 5 && !is_vowel(stem[n - 3])) ||
        (last == 's' && n >= 3 && is_vowel(stem[n - 2]) && is_vowel(stem[n - 3])) ||
        ends_with(stem, "os") || stem == "us" ||
        // short consonant-vowel-consonant stems: tak(e), mak(e), hik(e)
        (n == 3 && !is_vowel(stem[0]) && is_vowel(stem[1]) && !is_vowel(stem[2]) &&
         std::string_view("wxy").find(stem[2]) == std::string_view::npos);
    if (needs_e) stem += 'e';
    return stem;
}

std::string lemmatize_lower(const std::string& w) {
    if (auto it = exceptions().find(w); it != exceptions().end()) return std::string(it->second);
    if (invariant_words().count(w)) return w;
    const std::size_t n = w.size();

    if (ends_with(w, "iest") && n > 5) return w.substr(0, n - 4) + "y";

    if (ends_with(w, "ing") && n > 4) {
        const std::string stem = w.substr(0, n - 3);
        if (has_vowel(stem) && stem.size() >= 2) return restore_verb_stem(stem);
        return w;
    }
    if (ends_with(w, "ied") && n > 4) return w.substr(0, n - 3) + "y";
    if (ends_with(w, "eed")) return w;
    if (ends_with(w, "ed") && n > 3) {
        const std::string stem = w.substr(0, n - 2);
        if (!has_vowel(stem)) return w;
        if (ends_with(stem, "e")) return stem; // e.g. agreed handled above; freed
        return restore_verb_stem(stem);
    }

    if (ends_with(w, "ies") && n > 4) return w.substr(0, n - 3) + "y";
    if (ends_with(w, "sses")) return w.substr(0, n - 2);
    if (ends_with(w, "xes") || ends_with(w, "ches") || ends_with(w, "shes") || ends_with(w, "zzes"))
        return w.substr(0, n - 2);
    if (ends_with(w, "oes")) return n > 5 ? w.substr(0, n - 2) : w.substr(0, n - 1);
    if (ends_with(w, "s") && n > 3 && !ends_with(w, "ss") && !ends_with(w, "us") &&
        !ends_with(w, "is") && !ends_with(w, "ics") && !ends_with(w, "'s"))
        return w.substr(0, n - 1);
    return w;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace

StopwordList::StopwordList(std::string id, std::set<std::string, std::less<>> words)
    : id_(std::move(id)), words_(std::move(words)) {}

std::shared_ptr<const StopwordList> StopwordList::builtin() {
    static const auto list = [] {
        std::set<std::string, std::less<>> words;
        for (auto w : kBuiltinStopwords) words.emplace(w);
        return std::make_shared<const StopwordList>("builtin-en-v1", std::move(words));
    }();
    return list;
}

std::shared_ptr<const StopwordList> StopwordList::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("extract", "cannot open stop-word list " + path);
    std::set<std::string, std::less<>> words;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        words.insert(ascii_lower(std::string_view(line).substr(b, e - b + 1)));
    }
    return std::make_shared<const StopwordList>("file:" + path, std::move(words));
}

std::shared_ptr<const StopwordList> StopwordList::resolve(std::string_view id_or_path) {
    if (id_or_path == "builtin" || id_or_path == "builtin-en-v1") return builtin();
    if (id_or_path.starts_with("builtin"))
        throw ConfigError("extract", "unknown stop-word list '" + std::string(id_or_path) + "'");
    std::ifstream probe{std::string(id_or_path)};
    if (!probe) throw ConfigError("extract", "unknown stop-word list '" + std::string(id_or_path) + "'");
    return from_file(std::string(id_or_path));
}

bool StopwordList::contains(std::string_view lowercase_word) const {
    return words_.find(lowercase_word) != words_.end();
}

void ExtractionConfig::validate() const {
    if (!stopwords) throw ConfigError("extract", "no stop-word list configured");
    if (lemmatizer_id != kBuiltinLemmatizerId && lemmatizer_id != "builtin")
        throw ConfigError("extract", "unknown lemmatizer '" + lemmatizer_id + "'");
    if (min_count < 1) throw ConfigError("extract", "min count must be >= 1");
}

std::string lemmatize(std::string_view word, const ExtractionConfig& config) {
    const std::string lower = ascii_lower(word);
    std::string lemma = lemmatize_lower(lower);
    if (config.lowercase || lemma == lower) {
        if (!config.lowercase && lemma == lower) return std::string(word);
        return lemma;
    }
    // Case-preserving mode: keep the surface's casing on the shared prefix.
    std::string out = lemma;
    for (std::size_t i = 0; i < out.size() && i < word.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(word[i])) == out[i]) out[i] = word[i];
    return out;
}

} // namespace egowords
