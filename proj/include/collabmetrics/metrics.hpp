#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "collabmetrics/corpus.hpp"

namespace collabmetrics {

// Exponent alpha of the per-author weight 1/n_aut^alpha. alpha = 1 is
// fractional counting, alpha = 0 plain counting.
class WeightExponent {
public:
    explicit WeightExponent(double alpha);
    double value() const { return alpha_; }

    static constexpr double kMin = 0.0;
    static constexpr double kMax = 2.0;

private:
    double alpha_;
};

/// Per-author share n_aut^(-alpha). Throws std::domain_error for n_aut < 1.
double fractional_weight(int n_aut, WeightExponent alpha);

/// Largest h such that h entries are >= h; 0 for an empty list.
int h_index(std::span<const std::int64_t> citation_counts);

// Per-paper counts an entity profile is built from.
struct PaperStats {
    std::int32_t n_aut = 1;
    std::int64_t n_cit = 0;
    double n_icit = 0.0;
};

// Aggregated indices for one author or one official collaboration.
struct EntityProfile {
    std::string entity_id;
    std::int64_t n_pap = 0;
    std::int64_t n_totcit = 0;
    double n_fcit = 0.0;        // sum of n_cit / n_aut^alpha
    double n_icit = 0.0;        // sum of n_icit / n_aut^alpha
    int h_index = 0;
    double mean_naut = 1.0;
    double weighted_npap = 0.0; // sum of n_aut^(-alpha)
    double alpha = 1.0;
};

/// Core aggregation; author and collaboration profiles and the synthetic
/// pipeline all go through here. Throws std::invalid_argument on an empty
/// paper set.
EntityProfile profile_from_paper_stats(std::string entity_id, std::span<const PaperStats> papers,
                                       WeightExponent alpha);

EntityProfile author_profile(const std::string& author_id, const Corpus& corpus,
                             const CitationIndex& index, WeightExponent alpha);

EntityProfile collaboration_profile(const std::string& collab_name, const Corpus& corpus,
                                    const CitationIndex& index, WeightExponent alpha);

/// All author profiles, sorted by author id.
std::vector<EntityProfile> all_author_profiles(const Corpus& corpus, const CitationIndex& index,
                                               WeightExponent alpha);

/// All official-collaboration profiles, sorted by tag.
std::vector<EntityProfile> all_collaboration_profiles(const Corpus& corpus,
                                                      const CitationIndex& index,
                                                      WeightExponent alpha);

/// CSV export, header row included, reals with 6 significant digits.
void write_profiles_csv(std::ostream& out, std::span<const EntityProfile> profiles);

} // namespace collabmetrics
