#include "collabmetrics/cli.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <CLI11.hpp>

#include "collabmetrics/corpus.hpp"
#include "collabmetrics/metrics.hpp"
#include "collabmetrics/scaling.hpp"
#include "collabmetrics/svg_report.hpp"
#include "collabmetrics/synthcollab.hpp"
#include "collabmetrics/textio.hpp"

namespace fs = std::filesystem;

namespace collabmetrics::cli {

namespace {

struct ToleranceExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_output(const fs::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + path.string());
    return file;
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for reading: " + path.string());
    return file;
}

std::string read_file(const fs::path& path) {
    auto in = open_input(path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

using Manifest = std::map<std::string, std::string>;

// manifest.txt holds the effective parameters only; the wall-clock stamp
// goes to a separate file so repeated runs stay byte-identical.
void write_manifest(const fs::path& dir, const Manifest& entries) {
    auto file = open_output(dir / "manifest.txt");
    for (const auto& [key, value] : entries) file << key << " = " << value << '\n';

    auto stamp = open_output(dir / "manifest.stamp");
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    stamp << buf << '\n';
}

// ---- shared option bundles -------------------------------------------------

struct CorpusOptions {
    std::string input;
    std::string citations;  // optional sidecar
    std::optional<int> year_min;
    std::optional<int> year_max;
    std::optional<std::string> category;
};

struct BinningOptions {
    int bins_per_decade = 4;
    int min_bin_count = 3;
    std::string estimator = "mean";
};

struct SynthOptions {
    double s = 2.0 / 3.0;
    int n_collabs = 6000;
    int naut_min = 1;
    int naut_max = 3000;
    double papers_per_topic = 3.0;
    double sigma_log = 1.2;
    double base_median_cit = 10.0;
    std::uint64_t seed = 0;
    bool deterministic_papers = false;
    double synthetic_ref_count = 25.0;

    SynthConfig to_config() const {
        SynthConfig cfg;
        cfg.s = s;
        cfg.n_collabs = n_collabs;
        cfg.naut_min = naut_min;
        cfg.naut_max = naut_max;
        cfg.papers_per_topic = papers_per_topic;
        cfg.sigma_log = sigma_log;
        cfg.base_median_cit = base_median_cit;
        cfg.seed = seed;
        cfg.deterministic_papers = deterministic_papers;
        return cfg;
    }

    void describe(Manifest& m) const {
        m["s"] = format_sig(s, 9);
        m["n_collabs"] = std::to_string(n_collabs);
        m["naut_min"] = std::to_string(naut_min);
        m["naut_max"] = std::to_string(naut_max);
        m["papers_per_topic"] = format_sig(papers_per_topic, 9);
        m["sigma_log"] = format_sig(sigma_log, 9);
        m["base_median_cit"] = format_sig(base_median_cit, 9);
        m["seed"] = std::to_string(seed);
        m["deterministic_papers"] = deterministic_papers ? "true" : "false";
        m["synthetic_ref_count"] = format_sig(synthetic_ref_count, 9);
    }
};

void add_corpus_options(CLI::App* sub, CorpusOptions& opts, bool with_filters = true) {
    sub->add_option("--input", opts.input, "corpus file, one record per line")->required();
    sub->add_option("--citations", opts.citations,
                    "citation-count sidecar (index-injection mode)");
    if (with_filters) {
        sub->add_option("--year-min", opts.year_min, "keep papers with year >= this");
        sub->add_option("--year-max", opts.year_max, "keep papers with year <= this");
        sub->add_option("--category", opts.category, "keep papers of one topic only")
            ->check(CLI::IsMember({"experiment", "theory", "astrocosmo", "other"}));
    }
}

void add_binning_options(CLI::App* sub, BinningOptions& opts) {
    sub->add_option("--bins-per-decade", opts.bins_per_decade)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--min-bin-count", opts.min_bin_count)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--estimator", opts.estimator, "bin representative for the fit")
        ->check(CLI::IsMember({"mean", "median"}))
        ->capture_default_str();
}

void add_synth_options(CLI::App* sub, SynthOptions& opts) {
    sub->add_option("--s", opts.s, "sub-collaboration exponent")
        ->check(CLI::Range(1e-9, 1.0))
        ->capture_default_str();
    sub->add_option("--n-collabs", opts.n_collabs)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--naut-min", opts.naut_min)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--naut-max", opts.naut_max)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--papers-per-topic", opts.papers_per_topic)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--sigma-log", opts.sigma_log)
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_option("--base-median-cit", opts.base_median_cit)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", opts.seed, "generator seed; required, no silent default")->required();
    sub->add_flag("--deterministic-papers", opts.deterministic_papers,
                  "round the paper-count expectation instead of drawing");
    sub->add_option("--synthetic-ref-count", opts.synthetic_ref_count,
                    "effective reference count of synthetic citing papers")
        ->check(CLI::Range(1.0, 1e6))
        ->capture_default_str();
}

// ---- corpus loading with filters -------------------------------------------

Category category_from_name(const std::string& name) {
    for (Category c : {Category::Experiment, Category::Theory, Category::AstroCosmo, Category::Other}) {
        if (category_name(c) == name) return c;
    }
    throw std::invalid_argument("unknown category '" + name + "'");
}

bool keep_paper(const PaperRecord& p, const CorpusOptions& opts) {
    if (opts.year_min && p.year < *opts.year_min) return false;
    if (opts.year_max && p.year > *opts.year_max) return false;
    if (opts.category && classify_category(p) != category_from_name(*opts.category)) return false;
    return true;
}

struct LoadedCorpus {
    Corpus corpus;
    CitationIndex index;
    ParseResult parse;  // corpus member is moved out; rejection/warning info stays
};

LoadedCorpus load_corpus(const CorpusOptions& opts) {
    auto in = open_input(opts.input);
    ParseResult parsed = parse_corpus(in);
    Corpus corpus = std::move(parsed.corpus);

    const bool filtered = opts.year_min || opts.year_max || opts.category;
    CitationIndex index;
    if (!opts.citations.empty()) {
        // Sidecar counts are external truth: load against the full corpus,
        // then subset, so filters cannot invalidate sidecar rows.
        auto sidecar = open_input(opts.citations);
        index = load_citation_sidecar(corpus, sidecar);
        if (filtered) {
            std::vector<PaperRecord> kept;
            std::vector<CitationIndex::PaperCounts> kept_counts;
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                if (keep_paper(corpus.paper(i), opts)) {
                    kept.push_back(corpus.paper(i));
                    kept_counts.push_back(index.at(i));
                }
            }
            Corpus sub(std::move(kept));
            CitationIndex sub_index(sub.size());
            for (std::size_t i = 0; i < kept_counts.size(); ++i) {
                sub_index.at(i) = kept_counts[i];  // subset of a sorted corpus keeps its order
            }
            corpus = std::move(sub);
            index = std::move(sub_index);
        }
    } else {
        if (filtered) {
            std::vector<PaperRecord> kept;
            for (const auto& p : corpus.papers()) {
                if (keep_paper(p, opts)) kept.push_back(p);
            }
            corpus = Corpus(std::move(kept));
        }
        index = build_citation_index(corpus);
    }
    if (corpus.empty()) {
        throw std::runtime_error(filtered ? "filters exclude every paper in " + opts.input
                                          : "no valid papers in " + opts.input);
    }
    LoadedCorpus loaded;
    loaded.corpus = std::move(corpus);
    loaded.index = std::move(index);
    loaded.parse = std::move(parsed);
    return loaded;
}

void describe_corpus_options(Manifest& m, const CorpusOptions& opts) {
    m["input"] = opts.input;
    m["citations"] = opts.citations.empty() ? "(none)" : opts.citations;
    m["year_min"] = opts.year_min ? std::to_string(*opts.year_min) : "(off)";
    m["year_max"] = opts.year_max ? std::to_string(*opts.year_max) : "(off)";
    m["category"] = opts.category ? *opts.category : "(all)";
}

// ---- index kinds ------------------------------------------------------------

enum class IndexKind { Npap, MeanCit, TotCit, Fcit, Icit };

constexpr std::array<IndexKind, 5> kAllIndexKinds = {IndexKind::Npap, IndexKind::MeanCit,
                                                     IndexKind::TotCit, IndexKind::Fcit,
                                                     IndexKind::Icit};

std::string_view index_kind_name(IndexKind k) {
    switch (k) {
        case IndexKind::Npap: return "npap";
        case IndexKind::MeanCit: return "meancit";
        case IndexKind::TotCit: return "totcit";
        case IndexKind::Fcit: return "fcit";
        case IndexKind::Icit: return "icit";
    }
    return "npap";
}

double index_value(const EntityProfile& p, IndexKind k) {
    switch (k) {
        case IndexKind::Npap: return static_cast<double>(p.n_pap);
        case IndexKind::MeanCit:
            return static_cast<double>(p.n_totcit) / static_cast<double>(p.n_pap);
        case IndexKind::TotCit: return static_cast<double>(p.n_totcit);
        case IndexKind::Fcit: return p.n_fcit;
        case IndexKind::Icit: return p.n_icit;
    }
    return 0.0;
}

// ---- ingest ------------------------------------------------------------------

struct IngestOptions {
    CorpusOptions corpus;
    std::string output_dir;
};

void cmd_ingest(const IngestOptions& opts, std::ostream& out) {
    auto in = open_input(opts.corpus.input);
    ParseResult parsed = parse_corpus(in);

    fs::create_directories(opts.output_dir);
    {
        auto rejections = open_output(fs::path(opts.output_dir) / "rejections.tsv");
        write_rejections_tsv(rejections, parsed.rejected);
    }
    Manifest m;
    m["subcommand"] = "ingest";
    m["input"] = opts.corpus.input;
    m["lines_total"] = std::to_string(parsed.lines_total);
    m["papers"] = std::to_string(parsed.corpus.size());
    m["rejected"] = std::to_string(parsed.rejected.size());
    m["warnings"] = std::to_string(parsed.warnings.size());
    write_manifest(opts.output_dir, m);

    out << "ingest: " << parsed.corpus.size() << " papers, " << parsed.rejected.size()
        << " rejected, " << parsed.warnings.size() << " warnings\n";
}

// ---- indices -----------------------------------------------------------------

struct IndicesOptions {
    CorpusOptions corpus;
    std::string output_dir;
    double alpha = 1.0;
};

void cmd_indices(const IndicesOptions& opts, std::ostream& out) {
    LoadedCorpus loaded = load_corpus(opts.corpus);
    const WeightExponent alpha(opts.alpha);

    const auto authors = all_author_profiles(loaded.corpus, loaded.index, alpha);
    const auto collabs = all_collaboration_profiles(loaded.corpus, loaded.index, alpha);

    fs::create_directories(opts.output_dir);
    {
        auto file = open_output(fs::path(opts.output_dir) / "authors.csv");
        write_profiles_csv(file, authors);
    }
    {
        auto file = open_output(fs::path(opts.output_dir) / "collaborations.csv");
        write_profiles_csv(file, collabs);
    }

    Manifest m;
    m["subcommand"] = "indices";
    describe_corpus_options(m, opts.corpus);
    m["alpha"] = format_sig(opts.alpha, 9);
    m["papers"] = std::to_string(loaded.corpus.size());
    m["rejected"] = std::to_string(loaded.parse.rejected.size());
    m["authors"] = std::to_string(authors.size());
    m["collaborations"] = std::to_string(collabs.size());
    write_manifest(opts.output_dir, m);

    out << "indices: " << authors.size() << " authors, " << collabs.size()
        << " collaborations at alpha=" << format_sig(opts.alpha, 6) << '\n';
}

// ---- scaling -----------------------------------------------------------------

struct ScalingOptions {
    CorpusOptions corpus;
    std::string output_dir;
    double alpha = 1.0;
    BinningOptions binning;
    std::string entity = "collab";
    bool no_category_split = false;
    std::optional<double> fit_naut_min;
    std::optional<double> fit_naut_max;
    double decompose_tolerance = 0.07;
};

struct EntityWithCategory {
    EntityProfile profile;
    Category category;
};

Category plurality_category(const Corpus& corpus, const std::vector<std::size_t>& positions) {
    std::array<std::size_t, 4> counts{};
    for (std::size_t pos : positions) {
        counts[static_cast<std::size_t>(classify_category(corpus.paper(pos)))]++;
    }
    Category best = Category::Experiment;
    std::size_t best_count = 0;
    for (Category c : {Category::Experiment, Category::AstroCosmo, Category::Theory, Category::Other}) {
        const auto n = counts[static_cast<std::size_t>(c)];
        if (n > best_count) {
            best = c;
            best_count = n;
        }
    }
    return best;
}

std::vector<EntityWithCategory> entities_of_kind(const LoadedCorpus& loaded, WeightExponent alpha,
                                                 const std::string& kind) {
    std::map<std::string, std::vector<std::size_t>> groups;
    if (kind == "collab") {
        groups = group_official_collaborations(loaded.corpus);
    } else {
        std::unordered_map<std::string, std::vector<std::size_t>> by_author;
        for (std::size_t i = 0; i < loaded.corpus.size(); ++i) {
            for (const auto& author : loaded.corpus.paper(i).author_ids) {
                by_author[author].push_back(i);
            }
        }
        for (auto& [author, positions] : by_author) groups[author] = std::move(positions);
    }
    std::vector<EntityWithCategory> entities;
    entities.reserve(groups.size());
    for (const auto& [id, positions] : groups) {
        std::vector<PaperStats> stats;
        stats.reserve(positions.size());
        for (std::size_t pos : positions) {
            const auto& c = loaded.index.at(pos);
            stats.push_back({c.n_aut, c.n_cit, c.n_icit});
        }
        entities.push_back({profile_from_paper_stats(id, stats, alpha),
                            plurality_category(loaded.corpus, positions)});
    }
    return entities;
}

void cmd_scaling(const ScalingOptions& opts, std::ostream& out) {
    LoadedCorpus loaded = load_corpus(opts.corpus);
    const WeightExponent alpha(opts.alpha);
    const Estimator estimator = estimator_from_name(opts.binning.estimator);

    fs::create_directories(opts.output_dir);
    Manifest m;
    m["subcommand"] = "scaling";
    describe_corpus_options(m, opts.corpus);
    m["alpha"] = format_sig(opts.alpha, 9);
    m["bins_per_decade"] = std::to_string(opts.binning.bins_per_decade);
    m["min_bin_count"] = std::to_string(opts.binning.min_bin_count);
    m["estimator"] = opts.binning.estimator;
    m["entity"] = opts.entity;
    m["category_split"] = opts.no_category_split ? "off" : "on";
    m["fit_naut_min"] = opts.fit_naut_min ? format_sig(*opts.fit_naut_min, 9) : "(off)";
    m["fit_naut_max"] = opts.fit_naut_max ? format_sig(*opts.fit_naut_max, 9) : "(off)";
    m["papers"] = std::to_string(loaded.corpus.size());

    std::vector<std::string> kinds;
    if (opts.entity == "both") {
        kinds = {"collab", "author"};
    } else {
        kinds = {opts.entity};
    }

    for (const auto& kind : kinds) {
        const auto entities = entities_of_kind(loaded, alpha, kind);
        m["entities_" + kind] = std::to_string(entities.size());
        if (entities.empty()) {
            throw std::runtime_error("insufficient data: no " + kind + " entities in corpus");
        }

        struct Scope {
            std::string name;
            std::optional<Category> category;
        };
        std::vector<Scope> scopes = {{"overall", std::nullopt}};
        if (!opts.no_category_split) {
            for (Category c :
                 {Category::Experiment, Category::Theory, Category::AstroCosmo, Category::Other}) {
                scopes.push_back({std::string(category_name(c)), c});
            }
        }

        for (const auto& scope : scopes) {
            std::map<IndexKind, ScalingFit> fits;
            for (IndexKind k : kAllIndexKinds) {
                std::vector<ScalingPoint> points;
                for (const auto& e : entities) {
                    if (scope.category && e.category != *scope.category) continue;
                    const double naut = e.profile.mean_naut;
                    if (opts.fit_naut_min && naut < *opts.fit_naut_min) continue;
                    if (opts.fit_naut_max && naut > *opts.fit_naut_max) continue;
                    points.push_back({naut, index_value(e.profile, k)});
                }
                const std::string stem =
                    kind + "_" + std::string(index_kind_name(k)) + "_" + scope.name;
                try {
                    if (points.empty()) throw std::runtime_error("insufficient data: no entities");
                    const BinnedCurve curve =
                        log_bin(points, opts.binning.bins_per_decade, opts.binning.min_bin_count);
                    auto curve_file = open_output(fs::path(opts.output_dir) / ("curve_" + stem + ".csv"));
                    write_curve_csv(curve_file, curve);
                    const ScalingFit fit = fit_power_law(curve, estimator);
                    auto fit_file = open_output(fs::path(opts.output_dir) / ("fit_" + stem + ".csv"));
                    write_fit_csv(fit_file, fit);
                    fits[k] = fit;
                    out << "scaling " << stem << ": p = " << format_sig(fit.exponent, 6) << " (r2 "
                        << format_sig(fit.r_squared, 4) << ", " << fit.n_bins_used << " bins)\n";
                } catch (const std::runtime_error& e) {
                    // Per-category panels may legitimately lack data; the
                    // overall fit must exist.
                    if (scope.name == "overall") throw;
                    m["skipped_" + kind + "_" + std::string(index_kind_name(k)) + "_" + scope.name] =
                        e.what();
                }
            }
            if (fits.count(IndexKind::Npap) && fits.count(IndexKind::MeanCit) &&
                fits.count(IndexKind::TotCit)) {
                const auto d =
                    decompose_exponents(fits[IndexKind::Npap], fits[IndexKind::MeanCit],
                                        fits[IndexKind::TotCit], opts.decompose_tolerance);
                auto file = open_output(fs::path(opts.output_dir) /
                                        ("decomposition_" + kind + "_" + scope.name + ".csv"));
                file << "p_pap,p_cit,p_totcit,delta,tolerance,status\n";
                file << format_sig(d.p_pap, 9) << ',' << format_sig(d.p_cit, 9) << ','
                     << format_sig(d.p_totcit, 9) << ',' << format_sig(d.delta, 9) << ','
                     << format_sig(d.tolerance, 9) << ',' << (d.pass ? "pass" : "fail") << '\n';
            }
        }
    }
    write_manifest(opts.output_dir, m);
}

// ---- simulate ----------------------------------------------------------------

struct SimulateOptions {
    SynthOptions synth;
    std::string output_dir;
    std::string edges = "inject";
};

void cmd_simulate(const SimulateOptions& opts, std::ostream& out) {
    const SynthConfig config = opts.synth.to_config();
    const auto collabs = generate(config);

    fs::create_directories(opts.output_dir);
    std::size_t n_papers = 0;
    for (const auto& c : collabs) n_papers += static_cast<std::size_t>(c.n_pap);

    {
        auto corpus_file = open_output(fs::path(opts.output_dir) / "corpus.jsonl");
        if (opts.edges == "stubs") {
            write_synthetic_corpus_with_stubs(corpus_file, collabs);
        } else {
            auto sidecar = open_output(fs::path(opts.output_dir) / "citations.csv");
            write_synthetic_corpus_with_sidecar(corpus_file, sidecar, collabs,
                                                opts.synth.synthetic_ref_count);
        }
    }

    Manifest m;
    m["subcommand"] = "simulate";
    opts.synth.describe(m);
    m["edges"] = opts.edges;
    m["collaborations"] = std::to_string(collabs.size());
    m["papers"] = std::to_string(n_papers);
    write_manifest(opts.output_dir, m);

    out << "simulate: " << collabs.size() << " collaborations, " << n_papers << " papers ("
        << opts.edges << " mode)\n";
}

// ---- validate ----------------------------------------------------------------

struct ValidateOptions {
    SynthOptions synth;
    std::string output_dir;
    BinningOptions binning;
    double tol_pap = 0.05;
    double tol_cit = 0.05;
    double tol_totcit = 0.07;
    double tol_fcit = 0.05;
};

void cmd_validate(const ValidateOptions& opts, std::ostream& out) {
    const SynthConfig config = opts.synth.to_config();
    const auto collabs = generate(config);
    const WeightExponent alpha(1.0);
    const Estimator estimator = estimator_from_name(opts.binning.estimator);

    // Same metrics path as the file pipeline, fed directly from the
    // generated per-paper counts.
    std::vector<EntityProfile> profiles;
    profiles.reserve(collabs.size());
    for (const auto& c : collabs) {
        std::vector<PaperStats> stats;
        stats.reserve(c.citations.size());
        for (auto cit : c.citations) {
            stats.push_back({c.n_aut, cit,
                             static_cast<double>(cit) / opts.synth.synthetic_ref_count});
        }
        profiles.push_back(
            profile_from_paper_stats("synthC" + std::to_string(c.index), stats, alpha));
    }

    fs::create_directories(opts.output_dir);
    const TheoreticalExponents theory = theoretical_exponents(config.s);

    struct Row {
        std::string name;
        IndexKind kind;
        double theoretical;
        double tolerance;
    };
    const std::vector<Row> rows = {
        {"p_pap", IndexKind::Npap, theory.p_pap, opts.tol_pap},
        {"p_cit", IndexKind::MeanCit, theory.p_cit, opts.tol_cit},
        {"p_totcit", IndexKind::TotCit, theory.p_totcit, opts.tol_totcit},
        {"p_fcit", IndexKind::Fcit, theory.p_fcit, opts.tol_fcit},
    };

    bool all_pass = true;
    std::ostringstream deltas;
    deltas << "index,fitted,theoretical,delta,tolerance,status\n";
    out << "validate: s = " << format_sig(config.s, 6) << ", " << collabs.size()
        << " collaborations\n";
    for (const auto& row : rows) {
        std::vector<ScalingPoint> points;
        points.reserve(profiles.size());
        for (const auto& p : profiles) {
            points.push_back({p.mean_naut, index_value(p, row.kind)});
        }
        const BinnedCurve curve =
            log_bin(points, opts.binning.bins_per_decade, opts.binning.min_bin_count);
        const ScalingFit fit = fit_power_law(curve, estimator);

        const std::string stem(index_kind_name(row.kind));
        {
            auto file = open_output(fs::path(opts.output_dir) / ("curve_" + stem + ".csv"));
            write_curve_csv(file, curve);
        }
        {
            auto file = open_output(fs::path(opts.output_dir) / ("fit_" + stem + ".csv"));
            write_fit_csv(file, fit);
        }

        const double delta = fit.exponent - row.theoretical;
        const bool pass = std::abs(delta) <= row.tolerance;
        all_pass = all_pass && pass;
        deltas << row.name << ',' << format_sig(fit.exponent, 9) << ','
               << format_sig(row.theoretical, 9) << ',' << format_sig(delta, 9) << ','
               << format_sig(row.tolerance, 9) << ',' << (pass ? "pass" : "fail") << '\n';
        out << "  " << row.name << ": fitted " << format_sig(fit.exponent, 6) << " vs "
            << format_sig(row.theoretical, 6) << " (delta " << format_sig(delta, 6) << ", tol "
            << format_sig(row.tolerance, 6) << ") " << (pass ? "pass" : "FAIL") << '\n';
    }
    {
        auto file = open_output(fs::path(opts.output_dir) / "deltas.csv");
        file << deltas.str();
    }

    Manifest m;
    m["subcommand"] = "validate";
    opts.synth.describe(m);
    m["bins_per_decade"] = std::to_string(opts.binning.bins_per_decade);
    m["min_bin_count"] = std::to_string(opts.binning.min_bin_count);
    m["estimator"] = opts.binning.estimator;
    m["tol_pap"] = format_sig(opts.tol_pap, 9);
    m["tol_cit"] = format_sig(opts.tol_cit, 9);
    m["tol_totcit"] = format_sig(opts.tol_totcit, 9);
    m["tol_fcit"] = format_sig(opts.tol_fcit, 9);
    m["result"] = all_pass ? "pass" : "fail";
    write_manifest(opts.output_dir, m);

    if (!all_pass) {
        throw ToleranceExceeded("validate: fitted exponents outside tolerance (see " +
                                (fs::path(opts.output_dir) / "deltas.csv").string() + ")");
    }
    out << "validate: all exponents within tolerance\n";
}

// ---- report ------------------------------------------------------------------

struct ReportOptions {
    std::string mode = "curve";
    std::string input;
    std::string fit;
    std::string output_dir;
    std::string name = "plot.svg";
    int bins_per_decade = 4;
};

void cmd_report(const ReportOptions& opts, std::ostream& out) {
    const std::string input_text = read_file(opts.input);
    std::string svg;
    if (opts.mode == "histogram") {
        svg = render_histogram_svg(input_text, opts.bins_per_decade);
    } else {
        std::optional<std::string> fit_text;
        if (!opts.fit.empty()) fit_text = read_file(opts.fit);
        svg = render_curve_svg(input_text, fit_text);
    }
    fs::create_directories(opts.output_dir);
    {
        auto file = open_output(fs::path(opts.output_dir) / opts.name);
        file << svg;
    }
    Manifest m;
    m["subcommand"] = "report";
    m["mode"] = opts.mode;
    m["input"] = opts.input;
    m["fit"] = opts.fit.empty() ? "(none)" : opts.fit;
    m["name"] = opts.name;
    m["bins_per_decade"] = std::to_string(opts.bins_per_decade);
    write_manifest(opts.output_dir, m);
    out << "report: wrote " << (fs::path(opts.output_dir) / opts.name).string() << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"collaboration-aware bibliometric indices, scaling-law fits and synthetic validation"};
    app.name("collabmetrics");
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value file supplying flag defaults");

    auto ingest = std::make_shared<IngestOptions>();
    auto* ingest_cmd = app.add_subcommand("ingest", "validate a corpus file, report rejected lines");
    ingest_cmd->configurable();
    add_corpus_options(ingest_cmd, ingest->corpus, /*with_filters=*/false);
    ingest_cmd->add_option("--output-dir", ingest->output_dir)->required();
    ingest_cmd->callback([ingest, &out] { cmd_ingest(*ingest, out); });

    auto indices = std::make_shared<IndicesOptions>();
    auto* indices_cmd = app.add_subcommand("indices", "per-author and per-collaboration profiles");
    indices_cmd->configurable();
    add_corpus_options(indices_cmd, indices->corpus);
    indices_cmd->add_option("--output-dir", indices->output_dir)->required();
    indices_cmd->add_option("--alpha", indices->alpha, "weight exponent in 1/n_aut^alpha")
        ->check(CLI::Range(WeightExponent::kMin, WeightExponent::kMax))
        ->capture_default_str();
    indices_cmd->callback([indices, &out] { cmd_indices(*indices, out); });

    auto scaling = std::make_shared<ScalingOptions>();
    auto* scaling_cmd = app.add_subcommand("scaling", "binned curves and power-law fits vs n_aut");
    scaling_cmd->configurable();
    add_corpus_options(scaling_cmd, scaling->corpus);
    scaling_cmd->add_option("--output-dir", scaling->output_dir)->required();
    scaling_cmd->add_option("--alpha", scaling->alpha)
        ->check(CLI::Range(WeightExponent::kMin, WeightExponent::kMax))
        ->capture_default_str();
    add_binning_options(scaling_cmd, scaling->binning);
    scaling_cmd->add_option("--entity", scaling->entity, "fit official collaborations, authors or both")
        ->check(CLI::IsMember({"collab", "author", "both"}))
        ->capture_default_str();
    scaling_cmd->add_flag("--no-category-split", scaling->no_category_split,
                          "emit only the overall panel");
    scaling_cmd->add_option("--fit-naut-min", scaling->fit_naut_min,
                            "exclude entities below this mean n_aut");
    scaling_cmd->add_option("--fit-naut-max", scaling->fit_naut_max,
                            "exclude entities above this mean n_aut");
    scaling_cmd->add_option("--decompose-tolerance", scaling->decompose_tolerance)
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    scaling_cmd->callback([scaling, &out] { cmd_scaling(*scaling, out); });

    auto simulate = std::make_shared<SimulateOptions>();
    auto* simulate_cmd = app.add_subcommand("simulate", "write a synthetic collaboration corpus");
    simulate_cmd->configurable();
    add_synth_options(simulate_cmd, simulate->synth);
    simulate_cmd->add_option("--output-dir", simulate->output_dir)->required();
    simulate_cmd
        ->add_option("--edges", simulate->edges,
                     "citation realisation: citing stub papers or a count sidecar")
        ->check(CLI::IsMember({"stubs", "inject"}))
        ->capture_default_str();
    simulate_cmd->callback([simulate, &out] { cmd_simulate(*simulate, out); });

    auto validate = std::make_shared<ValidateOptions>();
    auto* validate_cmd =
        app.add_subcommand("validate", "simulate, fit, and compare exponents with theory");
    validate_cmd->configurable();
    add_synth_options(validate_cmd, validate->synth);
    validate_cmd->add_option("--output-dir", validate->output_dir)->required();
    add_binning_options(validate_cmd, validate->binning);
    validate_cmd->add_option("--tol-pap", validate->tol_pap)->capture_default_str();
    validate_cmd->add_option("--tol-cit", validate->tol_cit)->capture_default_str();
    validate_cmd->add_option("--tol-totcit", validate->tol_totcit)->capture_default_str();
    validate_cmd->add_option("--tol-fcit", validate->tol_fcit)->capture_default_str();
    validate_cmd->callback([validate, &out] { cmd_validate(*validate, out); });

    auto report = std::make_shared<ReportOptions>();
    auto* report_cmd = app.add_subcommand("report", "render a CSV as an SVG plot");
    report_cmd->configurable();
    report_cmd->add_option("--mode", report->mode)
        ->check(CLI::IsMember({"curve", "histogram"}))
        ->capture_default_str();
    report_cmd->add_option("--input", report->input, "curve CSV (curve mode) or profiles CSV (histogram)")
        ->required();
    report_cmd->add_option("--fit", report->fit, "fit CSV drawn as a dotted line (curve mode)");
    report_cmd->add_option("--output-dir", report->output_dir)->required();
    report_cmd->add_option("--name", report->name)->capture_default_str();
    report_cmd->add_option("--bins-per-decade", report->bins_per_decade)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    report_cmd->callback([report, &out] { cmd_report(*report, out); });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const ToleranceExceeded& e) {
        err << e.what() << '\n';
        return kExitTolerance;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace collabmetrics::cli
