#include "collabmetrics/corpus.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "collabmetrics/textio.hpp"

namespace collabmetrics {

namespace {

std::string_view code_root(std::string_view code) {
    auto dot = code.find('.');
    return dot == std::string_view::npos ? code : code.substr(0, dot);
}

constexpr std::array<std::string_view, 2> kExperimentCodes = {"hep-ex", "nucl-ex"};
constexpr std::array<std::string_view, 5> kTheoryCodes = {"hep-ph", "hep-th", "hep-lat",
                                                          "nucl-th", "gr-qc"};

} // namespace

std::string_view category_name(Category c) {
    switch (c) {
        case Category::Experiment: return "experiment";
        case Category::Theory: return "theory";
        case Category::AstroCosmo: return "astrocosmo";
        case Category::Other: return "other";
    }
    return "other";
}

Category classify_category(const PaperRecord& paper) {
    bool astro = false;
    bool theory = false;
    for (const auto& code : paper.categories) {
        auto root = code_root(code);
        for (auto exp : kExperimentCodes) {
            if (root == exp) return Category::Experiment;
        }
        if (root == "astro-ph") astro = true;
        for (auto th : kTheoryCodes) {
            if (root == th) theory = true;
        }
    }
    if (astro) return Category::AstroCosmo;
    if (theory) return Category::Theory;
    return Category::Other;
}

Corpus::Corpus(std::vector<PaperRecord> papers) : papers_(std::move(papers)) {
    std::sort(papers_.begin(), papers_.end(),
              [](const PaperRecord& a, const PaperRecord& b) { return a.paper_id < b.paper_id; });
    by_id_.reserve(papers_.size());
    for (std::size_t i = 0; i < papers_.size(); ++i) {
        const PaperRecord& p = papers_[i];
        if (p.paper_id.empty()) {
            throw std::invalid_argument("paper with empty id");
        }
        if (p.author_ids.empty()) {
            throw std::invalid_argument("paper '" + p.paper_id + "' has no authors");
        }
        std::vector<std::string> refs = p.reference_ids;
        std::sort(refs.begin(), refs.end());
        if (std::adjacent_find(refs.begin(), refs.end()) != refs.end()) {
            throw std::invalid_argument("paper '" + p.paper_id + "' lists a reference twice");
        }
        if (std::binary_search(refs.begin(), refs.end(), p.paper_id)) {
            throw std::invalid_argument("paper '" + p.paper_id + "' references itself");
        }
        auto [it, inserted] = by_id_.emplace(p.paper_id, i);
        if (!inserted) {
            throw std::runtime_error("duplicate paper id '" + p.paper_id + "'");
        }
    }
}

std::optional<std::size_t> Corpus::find(const std::string& paper_id) const {
    auto it = by_id_.find(paper_id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

namespace {

// Removes duplicates keeping first occurrence; appends a warning per drop.
void dedupe(std::vector<std::string>& items, std::size_t line_no, const char* what,
            std::vector<ParseWarning>& warnings) {
    std::vector<std::string> sorted = items;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) return;

    std::vector<std::string> seen;
    std::vector<std::string> kept;
    kept.reserve(items.size());
    for (auto& item : items) {
        if (std::find(seen.begin(), seen.end(), item) != seen.end()) {
            warnings.push_back({line_no, std::string("duplicate ") + what + " '" + item + "' removed"});
            continue;
        }
        seen.push_back(item);
        kept.push_back(std::move(item));
    }
    items = std::move(kept);
}

bool read_string_array(const nlohmann::json& value, std::vector<std::string>& out) {
    if (!value.is_array()) return false;
    out.clear();
    out.reserve(value.size());
    for (const auto& item : value) {
        if (!item.is_string()) return false;
        out.push_back(item.get<std::string>());
    }
    return true;
}

} // namespace

ParseResult parse_corpus(std::istream& in) {
    std::vector<PaperRecord> records;
    std::vector<RejectedLine> rejected;
    std::vector<ParseWarning> warnings;
    std::unordered_map<std::string, std::size_t> first_seen;  // paper_id -> line number

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) {
            rejected.push_back({line_no, "empty line"});
            continue;
        }

        auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded() || !j.is_object()) {
            rejected.push_back({line_no, "malformed record"});
            continue;
        }

        PaperRecord rec;
        bool ok = true;
        auto reject = [&](const std::string& reason) {
            rejected.push_back({line_no, reason});
            ok = false;
        };

        if (!j.contains("id")) {
            reject("missing key 'id'");
        } else if (!j["id"].is_string()) {
            reject("invalid value for key 'id'");
        } else {
            rec.paper_id = j["id"].get<std::string>();
            if (rec.paper_id.empty()) reject("empty id");
        }
        if (!ok) continue;

        if (!j.contains("authors")) {
            reject("missing key 'authors'");
        } else if (!read_string_array(j["authors"], rec.author_ids)) {
            reject("invalid value for key 'authors'");
        } else if (rec.author_ids.empty()) {
            reject("empty authors");
        }
        if (!ok) continue;

        if (j.contains("collab")) {
            if (!j["collab"].is_string()) {
                reject("invalid value for key 'collab'");
                continue;
            }
            rec.collaboration = trim(j["collab"].get<std::string>());
        }

        if (!j.contains("cats")) {
            reject("missing key 'cats'");
        } else if (!read_string_array(j["cats"], rec.categories)) {
            reject("invalid value for key 'cats'");
        }
        if (!ok) continue;

        if (!j.contains("year")) {
            reject("missing key 'year'");
        } else if (!j["year"].is_number_integer()) {
            reject("invalid value for key 'year'");
        } else {
            rec.year = j["year"].get<int>();
        }
        if (!ok) continue;

        if (!j.contains("refs")) {
            reject("missing key 'refs'");
        } else if (!read_string_array(j["refs"], rec.reference_ids)) {
            reject("invalid value for key 'refs'");
        }
        if (!ok) continue;

        dedupe(rec.author_ids, line_no, "author", warnings);
        dedupe(rec.reference_ids, line_no, "reference", warnings);
        auto self = std::find(rec.reference_ids.begin(), rec.reference_ids.end(), rec.paper_id);
        if (self != rec.reference_ids.end()) {
            rec.reference_ids.erase(self);
            warnings.push_back({line_no, "self-reference removed"});
        }

        auto [it, inserted] = first_seen.emplace(rec.paper_id, line_no);
        if (!inserted) {
            throw std::runtime_error("duplicate paper id '" + rec.paper_id + "' at lines " +
                                     std::to_string(it->second) + " and " + std::to_string(line_no));
        }
        records.push_back(std::move(rec));
    }

    ParseResult result;
    result.corpus = Corpus(std::move(records));
    result.rejected = std::move(rejected);
    result.warnings = std::move(warnings);
    result.lines_total = line_no;
    return result;
}

void write_rejections_tsv(std::ostream& out, const std::vector<RejectedLine>& rejected) {
    for (const auto& r : rejected) {
        out << r.line_number << '\t' << r.reason << '\n';
    }
}

CitationIndex build_citation_index(const Corpus& corpus) {
    CitationIndex index(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const PaperRecord& p = corpus.paper(i);
        index.at(i).n_ref = static_cast<std::int32_t>(p.reference_ids.size());
        index.at(i).n_aut = static_cast<std::int32_t>(p.author_ids.size());
    }
    // Canonical order makes the floating n_icit accumulation independent of
    // the original input order.
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const PaperRecord& citing = corpus.paper(i);
        if (citing.reference_ids.empty()) continue;
        const double weight = 1.0 / static_cast<double>(citing.reference_ids.size());
        for (const auto& ref : citing.reference_ids) {
            if (auto target = corpus.find(ref)) {
                auto& counts = index.at(*target);
                counts.n_cit += 1;
                counts.n_icit += weight;
            }
        }
    }
    return index;
}

CitationIndex load_citation_sidecar(const Corpus& corpus, std::istream& in) {
    CitationIndex index(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        index.at(i).n_ref = static_cast<std::int32_t>(corpus.paper(i).reference_ids.size());
        index.at(i).n_aut = static_cast<std::int32_t>(corpus.paper(i).author_ids.size());
    }

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != "paper_id,n_cit,n_ref_of_citers_harmonic") {
                throw std::runtime_error("citation sidecar: unexpected header '" + line + "'");
            }
            continue;
        }
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw std::runtime_error("citation sidecar line " + std::to_string(line_no) +
                                     ": expected 3 fields");
        }
        auto pos = corpus.find(fields[0]);
        if (!pos) {
            throw std::runtime_error("citation sidecar: unknown paper id '" + fields[0] + "'");
        }
        std::int64_t n_cit = 0;
        double n_icit = 0.0;
        try {
            n_cit = std::stoll(fields[1]);
            n_icit = std::stod(fields[2]);
        } catch (const std::exception&) {
            throw std::runtime_error("citation sidecar line " + std::to_string(line_no) +
                                     ": invalid number");
        }
        if (n_cit < 0 || n_icit < 0.0 || n_icit > static_cast<double>(n_cit) ||
            ((n_icit == 0.0) != (n_cit == 0))) {
            throw std::runtime_error("citation sidecar line " + std::to_string(line_no) +
                                     ": counts violate 0 <= n_icit <= n_cit");
        }
        index.at(*pos).n_cit = n_cit;
        index.at(*pos).n_icit = n_icit;
    }
    return index;
}

std::map<std::string, std::vector<std::size_t>> group_official_collaborations(const Corpus& corpus) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& tag = corpus.paper(i).collaboration;
        if (!tag.empty()) groups[tag].push_back(i);
    }
    return groups;
}

} // namespace collabmetrics
