// Acceptance suite: runs every acceptance criterion end to end and prints
// one pass/fail line each. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "collabmetrics/cli.hpp"
#include "collabmetrics/corpus.hpp"
#include "collabmetrics/metrics.hpp"
#include "collabmetrics/random.hpp"
#include "collabmetrics/scaling.hpp"
#include "collabmetrics/synthcollab.hpp"
#include "collabmetrics/textio.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace collabmetrics;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& what) {
    if (!condition) throw Failure(what);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("collabmetrics_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    require(file.good(), "cannot read " + path.string());
    std::ostringstream text;
    text << file.rdbuf();
    return text.str();
}

int run_cli(const std::vector<std::string>& args, std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (err_text) *err_text = err.str();
    return code;
}

struct DeltaRow {
    double fitted = 0.0;
    double theoretical = 0.0;
    double delta = 0.0;
    double tolerance = 0.0;
    std::string status;
};

std::map<std::string, DeltaRow> parse_deltas(const fs::path& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::getline(in, line);  // header
    std::map<std::string, DeltaRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        require(fields.size() == 6, "deltas.csv: expected 6 fields");
        DeltaRow row;
        row.fitted = std::stod(fields[1]);
        row.theoretical = std::stod(fields[2]);
        row.delta = std::stod(fields[3]);
        row.tolerance = std::stod(fields[4]);
        row.status = fields[5];
        rows[fields[0]] = row;
    }
    return rows;
}

// ---- criteria ---------------------------------------------------------------

void criterion_1_synthetic_round_trip() {
    const auto dir = fresh_dir("c1");
    const auto start = std::chrono::steady_clock::now();
    std::string err;
    const int code = run_cli({"validate", "--seed", "20190401", "--n-collabs", "6000",
                              "--naut-min", "1", "--naut-max", "3000", "--s", "0.6666666666666666",
                              "--sigma-log", "1.2", "--output-dir", (dir / "out").string()},
                             &err);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(code == 0, "validate exited with " + std::to_string(code) + ": " + err);
    auto rows = parse_deltas(dir / "out" / "deltas.csv");
    require(std::abs(rows.at("p_pap").fitted - 2.0 / 3.0) <= 0.05, "p_pap off 2/3");
    require(std::abs(rows.at("p_cit").fitted - 1.0 / 3.0) <= 0.05, "p_cit off 1/3");
    require(std::abs(rows.at("p_totcit").fitted - 1.0) <= 0.07, "p_totcit off 1");
    require(std::abs(rows.at("p_fcit").fitted - 0.0) <= 0.05, "p_fcit off 0");
    require(seconds <= 60.0, "runtime " + std::to_string(seconds) + "s exceeds 60s");
}

void criterion_2_orthogonal_variant() {
    const auto dir = fresh_dir("c2");
    std::string err;
    const int code = run_cli({"validate", "--seed", "20190402", "--n-collabs", "6000",
                              "--naut-min", "1", "--naut-max", "3000", "--s", "1.0", "--sigma-log",
                              "1.2", "--output-dir", (dir / "out").string()},
                             &err);
    require(code == 0, "validate exited with " + std::to_string(code) + ": " + err);
    auto rows = parse_deltas(dir / "out" / "deltas.csv");
    require(std::abs(rows.at("p_pap").fitted - 0.5) <= 0.05, "p_pap off 1/2 at s=1");
    require(std::abs(rows.at("p_cit").fitted - 0.5) <= 0.05, "p_cit off 1/2 at s=1");
}

void criterion_3_fixed_point() {
    const auto sol = solve_equilibrium_s();
    require(std::abs(sol.s - 2.0 / 3.0) <= 1e-12, "fixed point not 2/3 to 1e-12");
    require(std::abs(sol.s - (1.0 - sol.s / 2.0)) <= 1e-12, "fixed-point property violated");
    const auto theory = theoretical_exponents(2.0 / 3.0);
    // p_cit = s/2 is an exact halving; p_pap = 1 - s/2 rounds: the true value
    // sits exactly half an ulp above double(2/3), so bitwise equality is
    // pinned against the defining formula plus a one-ulp bound on 2/3.
    require(theory.p_cit == 1.0 / 3.0, "p_cit not exactly 1/3");
    require(theory.p_pap == 1.0 - (2.0 / 3.0) / 2.0, "p_pap not exactly 1 - s/2");
    require(std::abs(theory.p_pap - 2.0 / 3.0) <= std::ldexp(1.0, -52), "p_pap off 2/3 by > 1 ulp");
    require(theory.p_totcit == 1.0, "p_totcit not exactly 1");
    require(theory.p_fcit == 0.0, "p_fcit not exactly 0");
    require(theory.p_pap + theory.p_cit == 1.0, "p_pap + p_cit not exactly 1");
}

void criterion_4_fractional_conservation() {
    SplitMix64 rng(20190404);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 999);
        auto records = testsupport::random_corpus(rng, n);
        Corpus corpus(records);
        auto index = build_citation_index(corpus);

        long long total_cit = 0;
        for (std::size_t i = 0; i < corpus.size(); ++i) total_cit += index.at(i).n_cit;

        const long long brute = testsupport::brute_force_total_citations(records);
        require(total_cit == brute, "index disagrees with brute-force double loop");

        long double fcit_sum = 0.0L;
        for (const auto& profile : all_author_profiles(corpus, index, WeightExponent(1.0))) {
            fcit_sum += profile.n_fcit;
        }
        const double gap = std::abs(static_cast<double>(fcit_sum - total_cit));
        require(gap <= 1e-9, "conservation gap " + std::to_string(gap) + " above 1e-9");
    }
}

void criterion_5_individual_citation_oracle() {
    {
        Corpus corpus({
            testsupport::make_record("t", {"a"}),
            testsupport::make_record("c1", {"b"}, {"t", "x1", "x2", "x3"}),
            testsupport::make_record("c2", {"c"}, {"t", "y1", "y2", "y3", "y4"}),
        });
        auto index = build_citation_index(corpus);
        const auto pos = corpus.find("t");
        require(pos.has_value(), "fixture paper missing");
        require(index.at(*pos).n_icit == 0.45, "n_icit not exactly 1/4 + 1/5 = 0.45");
    }
    {
        // closed 5-paper corpus: every reference resolves internally
        Corpus corpus({
            testsupport::make_record("p1", {"a"}),
            testsupport::make_record("p2", {"b"}, {"p1"}),
            testsupport::make_record("p3", {"c"}, {"p1", "p2"}),
            testsupport::make_record("p4", {"d"}, {"p1", "p2", "p3"}),
            testsupport::make_record("p5", {"e"}, {"p4"}),
        });
        auto index = build_citation_index(corpus);
        double icit_sum = 0.0;
        long long citing_papers = 0;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            icit_sum += index.at(i).n_icit;
            if (!corpus.paper(i).reference_ids.empty()) ++citing_papers;
        }
        require(citing_papers == 4, "fixture should have 4 citing papers");
        require(std::abs(icit_sum - 4.0) <= 1e-12, "corpus-wide individual-citation sum off");
    }
}

void criterion_6_h_index_properties() {
    SplitMix64 rng(20190406);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = static_cast<int>(rng.next_u64() % 50);
        std::vector<std::int64_t> counts;
        long long total = 0;
        for (int i = 0; i < n; ++i) {
            counts.push_back(static_cast<std::int64_t>(rng.next_u64() % 300));
            total += counts.back();
        }
        int brute = 0;
        for (int h = 0; h <= n; ++h) {
            int at_least = 0;
            for (auto c : counts) {
                if (c >= h) ++at_least;
            }
            if (at_least >= h) brute = h;
        }
        const int h = h_index(counts);
        require(h == brute, "h-index disagrees with brute force");
        require(h <= n, "h exceeds paper count");
        require(h <= static_cast<int>(std::floor(std::sqrt(static_cast<double>(total)))),
                "h exceeds floor(sqrt(total citations))");
    }
}

void criterion_7_fit_exactness() {
    const int bpd = 4;
    auto exact_curve = [&](const std::function<double(double)>& f, int n_bins) {
        std::vector<ScalingPoint> points;
        for (int b = 1; b <= n_bins; ++b) {
            const double center = std::pow(10.0, (b + 0.5) / bpd);
            points.push_back({center, f(center)});
        }
        return log_bin(points, bpd, 1);
    };
    for (double amplitude : {0.5, 1.0, 3.0}) {
        for (double exponent : {0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0}) {
            auto fit = fit_power_law(
                exact_curve([&](double n) { return amplitude * std::pow(n, exponent); }, 10),
                Estimator::Mean);
            require(std::abs(fit.exponent - exponent) <= 1e-8, "grid exponent not recovered");
        }
    }
    auto flat = fit_power_law(exact_curve([](double) { return 7.0; }, 8), Estimator::Mean);
    require(std::abs(flat.exponent) <= 1e-10, "constant curve exponent above 1e-10");
}

void criterion_8_lognormal_width_constancy() {
    SynthConfig config;
    config.s = 2.0 / 3.0;
    config.n_collabs = 4000;
    config.naut_min = 1;
    config.naut_max = 1000;  // 3 decades
    config.sigma_log = 1.2;
    config.seed = 20190408;
    auto collabs = generate(config);

    const int bpd = 2;
    std::map<int, std::vector<double>> by_bin;
    for (const auto& c : collabs) {
        const int bin = static_cast<int>(std::floor(std::log10(double(c.n_aut)) * bpd));
        for (auto cit : c.citations) by_bin[bin].push_back(static_cast<double>(cit));
    }
    double sigma_min = 1e300, sigma_max = -1e300;
    int bins_used = 0;
    for (const auto& [bin, values] : by_bin) {
        if (values.size() < 100) continue;
        const auto fit = fit_lognormal(values);
        sigma_min = std::min(sigma_min, fit.sigma_log);
        sigma_max = std::max(sigma_max, fit.sigma_log);
        ++bins_used;
    }
    require(bins_used >= 6, "too few occupied bins across 3 decades");
    require(sigma_max - sigma_min <= 0.1,
            "per-bin sigma_log spread " + std::to_string(sigma_max - sigma_min) + " above 0.1");
}

void criterion_9_documented_format_pipeline() {
    // The paper's empirical exponents need the proprietary dump; what is
    // checkable is that `scaling` runs unmodified on a user-supplied file in
    // the documented line format (here produced by `simulate`).
    const auto dir = fresh_dir("c9");
    std::string err;
    int code = run_cli({"simulate", "--seed", "20190409", "--n-collabs", "900", "--naut-max",
                        "300", "--papers-per-topic", "1.0", "--base-median-cit", "3", "--edges",
                        "stubs", "--output-dir", (dir / "dump").string()},
                       &err);
    require(code == 0, "simulate failed: " + err);
    code = run_cli({"scaling", "--input", (dir / "dump" / "corpus.jsonl").string(),
                    "--output-dir", (dir / "out").string(), "--no-category-split"},
                   &err);
    require(code == 0, "scaling failed on documented-format dump: " + err);
    require(fs::exists(dir / "out" / "curve_collab_npap_overall.csv"), "curve CSV missing");
    require(fs::exists(dir / "out" / "fit_collab_totcit_overall.csv"), "fit CSV missing");
}

void criterion_10_determinism() {
    const auto dir = fresh_dir("c10");
    const std::vector<std::string> base = {"validate",   "--seed",     "20190410", "--n-collabs",
                                           "2000",       "--naut-max", "1000"};
    auto first = base;
    first.insert(first.end(), {"--output-dir", (dir / "a").string()});
    auto second = base;
    second.insert(second.end(), {"--output-dir", (dir / "b").string()});
    require(run_cli(first) == 0, "first validate run failed");
    require(run_cli(second) == 0, "second validate run failed");
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
        if (entry.path().extension() != ".csv") continue;
        const auto name = entry.path().filename();
        require(read_file(dir / "a" / name) == read_file(dir / "b" / name),
                name.string() + " differs between identical runs");
    }
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<void()> body;
    };
    const std::vector<Criterion> criteria = {
        {1, "synthetic round trip at s = 2/3 (6000 collabs, n_aut in [1, 3000])",
         criterion_1_synthetic_round_trip},
        {2, "variant s = 1 gives p_pap, p_cit within 0.05 of 1/2", criterion_2_orthogonal_variant},
        {3, "equilibrium fixed point and exact theoretical exponents", criterion_3_fixed_point},
        {4, "fractional conservation at alpha = 1 over 100 random corpora",
         criterion_4_fractional_conservation},
        {5, "individual-citation oracle fixtures", criterion_5_individual_citation_oracle},
        {6, "h-index property suite over 1000 random lists", criterion_6_h_index_properties},
        {7, "noiseless power-law fit exactness", criterion_7_fit_exactness},
        {8, "log-normal width constancy across 3 decades", criterion_8_lognormal_width_constancy},
        {9, "scaling subcommand runs unmodified on a documented-format dump",
         criterion_9_documented_format_pipeline},
        {10, "byte-identical validate outputs for a fixed seed", criterion_10_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        try {
            criterion.body();
            std::printf("criterion %2d [pass] %s\n", criterion.id, criterion.title);
        } catch (const std::exception& e) {
            ++failures;
            std::printf("criterion %2d [FAIL] %s: %s\n", criterion.id, criterion.title, e.what());
        }
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
