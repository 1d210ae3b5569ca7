#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace collabmetrics {

// One publication. reference_ids may point outside the corpus; external
// references count toward n_ref but never produce citation edges.
struct PaperRecord {
    std::string paper_id;
    std::vector<std::string> author_ids;
    std::string collaboration;  // empty = no official collaboration tag
    std::vector<std::string> categories;
    int year = 0;
    std::vector<std::string> reference_ids;

    bool operator==(const PaperRecord&) const = default;
};

enum class Category { Experiment, Theory, AstroCosmo, Other };

std::string_view category_name(Category c);

/// Maps a record's category codes to a topic. Precedence when several codes
/// are present: Experiment > AstroCosmo > Theory; unknown codes give Other.
/// Subcategory suffixes are ignored ("astro-ph.CO" matches "astro-ph").
Category classify_category(const PaperRecord& paper);

// Validated paper set held in canonical (paper_id-sorted) order, so the same
// records yield an identical corpus regardless of input order.
class Corpus {
public:
    Corpus() = default;

    /// Takes ownership of the records, sorts them by paper_id and checks the
    /// record invariants. Throws std::invalid_argument on an invariant
    /// violation and std::runtime_error on a duplicate paper_id.
    explicit Corpus(std::vector<PaperRecord> papers);

    std::size_t size() const { return papers_.size(); }
    bool empty() const { return papers_.empty(); }
    const PaperRecord& paper(std::size_t i) const { return papers_[i]; }
    const std::vector<PaperRecord>& papers() const { return papers_; }

    /// Position of a paper_id in canonical order, or nullopt if absent.
    std::optional<std::size_t> find(const std::string& paper_id) const;

    bool operator==(const Corpus& other) const { return papers_ == other.papers_; }

private:
    std::vector<PaperRecord> papers_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

struct RejectedLine {
    std::size_t line_number = 0;
    std::string reason;
};

struct ParseWarning {
    std::size_t line_number = 0;
    std::string message;
};

struct ParseResult {
    Corpus corpus;
    std::vector<RejectedLine> rejected;
    std::vector<ParseWarning> warnings;
    std::size_t lines_total = 0;
};

/// Parses line-delimited paper records (one JSON object per line, keys: id,
/// authors, collab, cats, year, refs). Malformed lines are skipped and
/// reported; duplicate references / authors and self-references inside one
/// record are dropped with a warning. A paper_id appearing on two lines is a
/// hard failure (std::runtime_error naming both lines).
ParseResult parse_corpus(std::istream& in);

/// Rejection report: one `line_number<TAB>reason` row per rejected line.
void write_rejections_tsv(std::ostream& out, const std::vector<RejectedLine>& rejected);

// Per-paper derived counts, parallel to corpus order.
class CitationIndex {
public:
    struct PaperCounts {
        std::int64_t n_cit = 0;  // citations received from inside the corpus
        double n_icit = 0.0;     // sum of 1/n_ref over citing papers
        std::int32_t n_ref = 0;  // listed references, external ones included
        std::int32_t n_aut = 0;
    };

    CitationIndex() = default;
    explicit CitationIndex(std::size_t n) : counts_(n) {}

    std::size_t size() const { return counts_.size(); }
    const PaperCounts& at(std::size_t i) const { return counts_[i]; }
    PaperCounts& at(std::size_t i) { return counts_[i]; }

private:
    std::vector<PaperCounts> counts_;
};

/// Builds the citation index: n_cit(p) counts citing papers inside the
/// corpus, n_icit(p) adds 1/n_ref of each citing paper. References to
/// unknown ids are valid and produce no edge. Deterministic: contributions
/// accumulate in canonical corpus order.
CitationIndex build_citation_index(const Corpus& corpus);

/// Index-injection mode: reads a `paper_id,n_cit,n_ref_of_citers_harmonic`
/// CSV sidecar and uses it as the citation counts (n_ref/n_aut still come
/// from the corpus records). Unknown ids or counts violating
/// 0 <= n_icit <= n_cit are errors.
CitationIndex load_citation_sidecar(const Corpus& corpus, std::istream& in);

/// Papers grouped by their official collaboration tag (canonical-order
/// indices); untagged papers are excluded.
std::map<std::string, std::vector<std::size_t>> group_official_collaborations(const Corpus& corpus);

} // namespace collabmetrics
