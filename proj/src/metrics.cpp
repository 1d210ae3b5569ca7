#include "collabmetrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "collabmetrics/textio.hpp"

namespace collabmetrics {

WeightExponent::WeightExponent(double alpha) : alpha_(alpha) {
    if (!(alpha >= kMin && alpha <= kMax)) {
        throw std::invalid_argument("alpha must be in [0, 2], got " + std::to_string(alpha));
    }
}

double fractional_weight(int n_aut, WeightExponent alpha) {
    if (n_aut < 1) {
        throw std::domain_error("fractional_weight: n_aut must be >= 1");
    }
    return std::pow(static_cast<double>(n_aut), -alpha.value());
}

int h_index(std::span<const std::int64_t> citation_counts) {
    std::vector<std::int64_t> sorted(citation_counts.begin(), citation_counts.end());
    for (auto c : sorted) {
        if (c < 0) throw std::invalid_argument("h_index: citation counts must be nonnegative");
    }
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    int h = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] >= static_cast<std::int64_t>(i) + 1) {
            h = static_cast<int>(i) + 1;
        } else {
            break;
        }
    }
    return h;
}

EntityProfile profile_from_paper_stats(std::string entity_id, std::span<const PaperStats> papers,
                                       WeightExponent alpha) {
    if (papers.empty()) {
        throw std::invalid_argument("profile: entity '" + entity_id + "' has no papers");
    }
    EntityProfile profile;
    profile.entity_id = std::move(entity_id);
    profile.n_pap = static_cast<std::int64_t>(papers.size());
    profile.alpha = alpha.value();

    std::vector<std::int64_t> citations;
    citations.reserve(papers.size());
    double naut_sum = 0.0;
    for (const PaperStats& p : papers) {
        const double w = fractional_weight(p.n_aut, alpha);
        profile.n_totcit += p.n_cit;
        profile.n_fcit += static_cast<double>(p.n_cit) * w;
        profile.n_icit += p.n_icit * w;
        profile.weighted_npap += w;
        naut_sum += static_cast<double>(p.n_aut);
        citations.push_back(p.n_cit);
    }
    profile.mean_naut = naut_sum / static_cast<double>(papers.size());
    profile.h_index = h_index(citations);
    return profile;
}

namespace {

std::vector<PaperStats> stats_for(const CitationIndex& index,
                                  const std::vector<std::size_t>& paper_positions) {
    std::vector<PaperStats> stats;
    stats.reserve(paper_positions.size());
    for (std::size_t pos : paper_positions) {
        const auto& c = index.at(pos);
        stats.push_back({c.n_aut, c.n_cit, c.n_icit});
    }
    return stats;
}

} // namespace

EntityProfile author_profile(const std::string& author_id, const Corpus& corpus,
                             const CitationIndex& index, WeightExponent alpha) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& authors = corpus.paper(i).author_ids;
        if (std::find(authors.begin(), authors.end(), author_id) != authors.end()) {
            positions.push_back(i);
        }
    }
    if (positions.empty()) {
        throw std::runtime_error("unknown author id '" + author_id + "'");
    }
    return profile_from_paper_stats(author_id, stats_for(index, positions), alpha);
}

EntityProfile collaboration_profile(const std::string& collab_name, const Corpus& corpus,
                                    const CitationIndex& index, WeightExponent alpha) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (corpus.paper(i).collaboration == collab_name && !collab_name.empty()) {
            positions.push_back(i);
        }
    }
    if (positions.empty()) {
        throw std::runtime_error("unknown collaboration '" + collab_name + "'");
    }
    return profile_from_paper_stats(collab_name, stats_for(index, positions), alpha);
}

std::vector<EntityProfile> all_author_profiles(const Corpus& corpus, const CitationIndex& index,
                                               WeightExponent alpha) {
    // hash-group then sort: hyper-author corpora touch tens of millions of
    // (paper, author) pairs
    std::unordered_map<std::string, std::vector<std::size_t>> by_author;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (const auto& author : corpus.paper(i).author_ids) {
            by_author[author].push_back(i);
        }
    }
    std::vector<const std::string*> authors;
    authors.reserve(by_author.size());
    for (const auto& [author, positions] : by_author) authors.push_back(&author);
    std::sort(authors.begin(), authors.end(),
              [](const std::string* a, const std::string* b) { return *a < *b; });

    std::vector<EntityProfile> profiles;
    profiles.reserve(authors.size());
    for (const std::string* author : authors) {
        profiles.push_back(
            profile_from_paper_stats(*author, stats_for(index, by_author.at(*author)), alpha));
    }
    return profiles;
}

std::vector<EntityProfile> all_collaboration_profiles(const Corpus& corpus,
                                                      const CitationIndex& index,
                                                      WeightExponent alpha) {
    std::vector<EntityProfile> profiles;
    for (const auto& [tag, positions] : group_official_collaborations(corpus)) {
        profiles.push_back(profile_from_paper_stats(tag, stats_for(index, positions), alpha));
    }
    return profiles;
}

void write_profiles_csv(std::ostream& out, std::span<const EntityProfile> profiles) {
    out << "entity_id,n_pap,n_totcit,n_fcit,n_icit,h_index,mean_naut,weighted_npap,alpha\n";
    for (const auto& p : profiles) {
        out << csv_escape(p.entity_id) << ',' << p.n_pap << ',' << p.n_totcit << ','
            << format_sig(p.n_fcit, 6) << ',' << format_sig(p.n_icit, 6) << ',' << p.h_index << ','
            << format_sig(p.mean_naut, 6) << ',' << format_sig(p.weighted_npap, 6) << ','
            << format_sig(p.alpha, 6) << '\n';
    }
}

} // namespace collabmetrics
