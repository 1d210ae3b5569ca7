#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace collabmetrics {

// Generator parameters for the theoretical collaboration model: a
// collaboration of n_aut authors organises into n_sub = n_aut^s
// sub-collaborations; per-paper citations follow a log-normal whose median
// grows as sqrt(n_sub), and the paper count grows as n_aut / sqrt(n_sub)
// so that total citations stay linear in n_aut (conservation of work).
// At the equilibrium s the paper count is papers_per_topic * n_sub.
struct SynthConfig {
    double s = 2.0 / 3.0;          // sub-collaboration exponent, in (0, 1]
    int n_collabs = 6000;
    int naut_min = 1;              // log-uniform collaboration sizes
    int naut_max = 3000;
    double papers_per_topic = 3.0; // paper rate; per sub-collaboration at equilibrium
    double sigma_log = 1.2;        // log-normal width of per-paper citations
    double base_median_cit = 10.0; // median citations of a single-topic paper
    std::uint64_t seed = 0;
    bool deterministic_papers = false;  // round the expectation instead of a Poisson draw

    /// Throws std::invalid_argument when a bound is violated.
    void validate() const;
};

struct SynthCollaboration {
    int index = 0;   // position in generation order; the collaboration tag is synthC<index>
    int n_aut = 1;
    int n_sub = 1;   // round(n_aut^s) clamped to [1, n_aut]
    int n_pap = 1;
    std::vector<std::int64_t> citations;  // one count per paper
};

struct EquilibriumSolution {
    double s = 0.0;
    double p_pap = 0.0;  // 1 - s/2
    double p_cit = 0.0;  // s/2
    int iterations = 0;
};

/// Fixed point of s = 1 - s/2, iterated from s0 to absolute tolerance tol.
/// The map is a contraction with factor 1/2, so any start converges to 2/3.
EquilibriumSolution solve_equilibrium_s(double s0 = 1.0, double tol = 1e-12);

struct TheoreticalExponents {
    double p_pap = 0.0;
    double p_cit = 0.0;
    double p_totcit = 1.0;
    double p_fcit = 0.0;
};

/// (1 - s/2, s/2, 1, 0) for s in (0, 1].
TheoreticalExponents theoretical_exponents(double s);

/// Draws the synthetic collaborations. Fully deterministic for a given
/// config: each collaboration uses its own (seed, index) sub-stream.
std::vector<SynthCollaboration> generate(const SynthConfig& config);

// Emission in the ingestion line format. Paper ids are synthC<j>:p<k>,
// authors synth:<j>:<i>, collaboration tags synthC<j>.

/// Citation edges realised as citing stub papers (stub k cites every paper
/// with more than k citations, so each stub's references stay distinct).
/// Only sensible for small corpora; the stub count equals the largest
/// citation count.
void write_synthetic_corpus_with_stubs(std::ostream& corpus_out,
                                       std::span<const SynthCollaboration> collabs);

/// Index-injection mode: papers carry no references; a sidecar CSV
/// `paper_id,n_cit,n_ref_of_citers_harmonic` carries the citation counts
/// with n_icit = n_cit / ref_count_of_citers.
void write_synthetic_corpus_with_sidecar(std::ostream& corpus_out, std::ostream& sidecar_out,
                                         std::span<const SynthCollaboration> collabs,
                                         double ref_count_of_citers = 25.0);

} // namespace collabmetrics
