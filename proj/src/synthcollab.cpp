#include "collabmetrics/synthcollab.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "collabmetrics/random.hpp"
#include "collabmetrics/textio.hpp"

namespace collabmetrics {

void SynthConfig::validate() const {
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("synth config: s must be in (0, 1]");
    if (n_collabs < 1) throw std::invalid_argument("synth config: n_collabs must be >= 1");
    if (naut_min < 1) throw std::invalid_argument("synth config: naut_min must be >= 1");
    if (naut_max < naut_min) throw std::invalid_argument("synth config: naut_max < naut_min");
    if (!(papers_per_topic > 0.0)) {
        throw std::invalid_argument("synth config: papers_per_topic must be > 0");
    }
    if (!(sigma_log >= 0.0)) throw std::invalid_argument("synth config: sigma_log must be >= 0");
    if (!(base_median_cit > 0.0)) {
        throw std::invalid_argument("synth config: base_median_cit must be > 0");
    }
}

EquilibriumSolution solve_equilibrium_s(double s0, double tol) {
    EquilibriumSolution sol;
    double s = s0;
    int iterations = 0;
    for (;;) {
        const double next = 1.0 - s / 2.0;
        ++iterations;
        if (std::abs(next - s) <= tol) {
            s = next;
            break;
        }
        s = next;
    }
    sol.s = s;
    sol.p_pap = 1.0 - s / 2.0;
    sol.p_cit = s / 2.0;
    sol.iterations = iterations;
    return sol;
}

TheoreticalExponents theoretical_exponents(double s) {
    if (!(s > 0.0 && s <= 1.0)) {
        throw std::invalid_argument("theoretical_exponents: s must be in (0, 1]");
    }
    return {1.0 - s / 2.0, s / 2.0, 1.0, 0.0};
}

std::vector<SynthCollaboration> generate(const SynthConfig& config) {
    config.validate();

    const double log_min = std::log(static_cast<double>(config.naut_min));
    const double log_max = std::log(static_cast<double>(config.naut_max));

    std::vector<SynthCollaboration> collabs;
    collabs.reserve(static_cast<std::size_t>(config.n_collabs));
    for (int j = 0; j < config.n_collabs; ++j) {
        SplitMix64 rng(mix_seed(config.seed, static_cast<std::uint64_t>(j)));
        SynthCollaboration c;
        c.index = j;

        const double u = rng.next_double();
        const double naut_real = std::exp(log_min + u * (log_max - log_min));
        c.n_aut = static_cast<int>(std::llround(naut_real));
        c.n_aut = std::clamp(c.n_aut, config.naut_min, config.naut_max);

        const double nsub_real = std::pow(static_cast<double>(c.n_aut), config.s);
        c.n_sub = static_cast<int>(std::llround(nsub_real));
        c.n_sub = std::clamp(c.n_sub, 1, c.n_aut);

        // Conservation of work: papers at rate n_aut / sqrt(n_sub) and
        // citations with median ~ sqrt(n_sub) make the total citation count
        // grow linearly with n_aut for every s. At the equilibrium s the
        // paper rate reduces to papers_per_topic * n_sub.
        const double expected_papers = config.papers_per_topic * static_cast<double>(c.n_aut) /
                                       std::sqrt(static_cast<double>(c.n_sub));
        std::int64_t n_pap = config.deterministic_papers
                                 ? std::llround(expected_papers)
                                 : draw_poisson(rng, expected_papers);
        c.n_pap = static_cast<int>(std::max<std::int64_t>(1, n_pap));

        const double mu = std::log(config.base_median_cit * std::sqrt(static_cast<double>(c.n_sub)));
        c.citations.reserve(static_cast<std::size_t>(c.n_pap));
        for (int k = 0; k < c.n_pap; ++k) {
            const double draw = std::exp(draw_normal(rng, mu, config.sigma_log));
            c.citations.push_back(std::max<std::int64_t>(0, std::llround(draw)));
        }
        collabs.push_back(std::move(c));
    }
    return collabs;
}

namespace {

std::string paper_id_of(int collab_index, int paper_index) {
    return "synthC" + std::to_string(collab_index) + ":p" + std::to_string(paper_index);
}

void write_collab_papers(std::ostream& out, const SynthCollaboration& c) {
    nlohmann::json authors = nlohmann::json::array();
    for (int i = 0; i < c.n_aut; ++i) {
        authors.push_back("synth:" + std::to_string(c.index) + ":" + std::to_string(i));
    }
    const std::string tag = "synthC" + std::to_string(c.index);
    for (int k = 0; k < c.n_pap; ++k) {
        nlohmann::json rec;
        rec["id"] = paper_id_of(c.index, k);
        rec["authors"] = authors;
        rec["collab"] = tag;
        rec["cats"] = nlohmann::json::array({"synth"});
        rec["year"] = 2000;
        rec["refs"] = nlohmann::json::array();
        out << rec.dump() << '\n';
    }
}

} // namespace

void write_synthetic_corpus_with_stubs(std::ostream& corpus_out,
                                       std::span<const SynthCollaboration> collabs) {
    std::int64_t max_cit = 0;
    for (const auto& c : collabs) {
        write_collab_papers(corpus_out, c);
        for (auto cit : c.citations) max_cit = std::max(max_cit, cit);
    }
    // Stub k cites every paper with more than k citations; references inside
    // one stub are therefore distinct and the edge counts come out exact.
    for (std::int64_t k = 0; k < max_cit; ++k) {
        nlohmann::json refs = nlohmann::json::array();
        for (const auto& c : collabs) {
            for (int p = 0; p < c.n_pap; ++p) {
                if (c.citations[static_cast<std::size_t>(p)] > k) {
                    refs.push_back(paper_id_of(c.index, p));
                }
            }
        }
        nlohmann::json rec;
        rec["id"] = "synthcite:" + std::to_string(k);
        rec["authors"] = nlohmann::json::array({"synth:cite:" + std::to_string(k)});
        rec["cats"] = nlohmann::json::array({"synth"});
        rec["year"] = 2001;
        rec["refs"] = refs;
        corpus_out << rec.dump() << '\n';
    }
}

void write_synthetic_corpus_with_sidecar(std::ostream& corpus_out, std::ostream& sidecar_out,
                                         std::span<const SynthCollaboration> collabs,
                                         double ref_count_of_citers) {
    if (!(ref_count_of_citers >= 1.0)) {
        throw std::invalid_argument("ref_count_of_citers must be >= 1");
    }
    sidecar_out << "paper_id,n_cit,n_ref_of_citers_harmonic\n";
    for (const auto& c : collabs) {
        write_collab_papers(corpus_out, c);
        for (int k = 0; k < c.n_pap; ++k) {
            const auto cit = c.citations[static_cast<std::size_t>(k)];
            sidecar_out << paper_id_of(c.index, k) << ',' << cit << ','
                        << format_sig(static_cast<double>(cit) / ref_count_of_citers, 9) << '\n';
        }
    }
}

} // namespace collabmetrics
