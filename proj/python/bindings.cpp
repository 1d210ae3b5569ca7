#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "collabmetrics/cli.hpp"
#include "collabmetrics/corpus.hpp"
#include "collabmetrics/metrics.hpp"
#include "collabmetrics/scaling.hpp"
#include "collabmetrics/svg_report.hpp"
#include "collabmetrics/synthcollab.hpp"

namespace py = pybind11;
using namespace collabmetrics;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Collaboration-aware bibliometric indices, power-law scaling fits and the "
              "synthetic collaboration model.";

    // corpus ------------------------------------------------------------
    py::class_<PaperRecord>(m, "PaperRecord")
        .def(py::init<>())
        .def(py::init([](std::string paper_id, std::vector<std::string> author_ids,
                         std::string collaboration, std::vector<std::string> categories, int year,
                         std::vector<std::string> reference_ids) {
                 PaperRecord r;
                 r.paper_id = std::move(paper_id);
                 r.author_ids = std::move(author_ids);
                 r.collaboration = std::move(collaboration);
                 r.categories = std::move(categories);
                 r.year = year;
                 r.reference_ids = std::move(reference_ids);
                 return r;
             }),
             py::arg("paper_id"), py::arg("author_ids"), py::arg("collaboration") = "",
             py::arg("categories") = std::vector<std::string>{}, py::arg("year") = 0,
             py::arg("reference_ids") = std::vector<std::string>{})
        .def_readwrite("paper_id", &PaperRecord::paper_id)
        .def_readwrite("author_ids", &PaperRecord::author_ids)
        .def_readwrite("collaboration", &PaperRecord::collaboration)
        .def_readwrite("categories", &PaperRecord::categories)
        .def_readwrite("year", &PaperRecord::year)
        .def_readwrite("reference_ids", &PaperRecord::reference_ids);

    py::enum_<Category>(m, "Category")
        .value("Experiment", Category::Experiment)
        .value("Theory", Category::Theory)
        .value("AstroCosmo", Category::AstroCosmo)
        .value("Other", Category::Other);

    py::class_<Corpus>(m, "Corpus")
        .def(py::init<>())
        .def(py::init<std::vector<PaperRecord>>(), py::arg("papers"))
        .def("__len__", &Corpus::size)
        .def("paper", &Corpus::paper, py::return_value_policy::reference_internal)
        .def("papers", &Corpus::papers, py::return_value_policy::reference_internal)
        .def("find", &Corpus::find);

    py::class_<RejectedLine>(m, "RejectedLine")
        .def_readonly("line_number", &RejectedLine::line_number)
        .def_readonly("reason", &RejectedLine::reason);

    py::class_<ParseWarning>(m, "ParseWarning")
        .def_readonly("line_number", &ParseWarning::line_number)
        .def_readonly("message", &ParseWarning::message);

    py::class_<ParseResult>(m, "ParseResult")
        .def_readonly("corpus", &ParseResult::corpus)
        .def_readonly("rejected", &ParseResult::rejected)
        .def_readonly("warnings", &ParseResult::warnings)
        .def_readonly("lines_total", &ParseResult::lines_total);

    m.def(
        "parse_corpus",
        [](const std::string& text) {
            std::istringstream in(text);
            return parse_corpus(in);
        },
        py::arg("text"), "Parse line-delimited paper records from a string.");

    py::class_<CitationIndex::PaperCounts>(m, "PaperCounts")
        .def_readonly("n_cit", &CitationIndex::PaperCounts::n_cit)
        .def_readonly("n_icit", &CitationIndex::PaperCounts::n_icit)
        .def_readonly("n_ref", &CitationIndex::PaperCounts::n_ref)
        .def_readonly("n_aut", &CitationIndex::PaperCounts::n_aut);

    py::class_<CitationIndex>(m, "CitationIndex")
        .def("__len__", &CitationIndex::size)
        .def(
            "at", [](const CitationIndex& idx, std::size_t i) { return idx.at(i); },
            py::arg("position"));

    m.def("build_citation_index", &build_citation_index, py::arg("corpus"));
    m.def(
        "load_citation_sidecar",
        [](const Corpus& corpus, const std::string& text) {
            std::istringstream in(text);
            return load_citation_sidecar(corpus, in);
        },
        py::arg("corpus"), py::arg("text"));
    m.def("classify_category", &classify_category, py::arg("paper"));
    m.def("group_official_collaborations", &group_official_collaborations, py::arg("corpus"));

    // metrics -------------------------------------------------------------
    m.def(
        "fractional_weight",
        [](int n_aut, double alpha) { return fractional_weight(n_aut, WeightExponent(alpha)); },
        py::arg("n_aut"), py::arg("alpha"), "Per-author share n_aut**(-alpha).");
    m.def(
        "h_index",
        [](const std::vector<std::int64_t>& counts) { return h_index(counts); },
        py::arg("citation_counts"));

    py::class_<PaperStats>(m, "PaperStats")
        .def(py::init([](int n_aut, std::int64_t n_cit, double n_icit) {
                 return PaperStats{n_aut, n_cit, n_icit};
             }),
             py::arg("n_aut"), py::arg("n_cit"), py::arg("n_icit") = 0.0)
        .def_readwrite("n_aut", &PaperStats::n_aut)
        .def_readwrite("n_cit", &PaperStats::n_cit)
        .def_readwrite("n_icit", &PaperStats::n_icit);

    py::class_<EntityProfile>(m, "EntityProfile")
        .def_readonly("entity_id", &EntityProfile::entity_id)
        .def_readonly("n_pap", &EntityProfile::n_pap)
        .def_readonly("n_totcit", &EntityProfile::n_totcit)
        .def_readonly("n_fcit", &EntityProfile::n_fcit)
        .def_readonly("n_icit", &EntityProfile::n_icit)
        .def_readonly("h_index", &EntityProfile::h_index)
        .def_readonly("mean_naut", &EntityProfile::mean_naut)
        .def_readonly("weighted_npap", &EntityProfile::weighted_npap)
        .def_readonly("alpha", &EntityProfile::alpha);

    m.def(
        "profile_from_paper_stats",
        [](std::string entity_id, const std::vector<PaperStats>& stats, double alpha) {
            return profile_from_paper_stats(std::move(entity_id), stats, WeightExponent(alpha));
        },
        py::arg("entity_id"), py::arg("papers"), py::arg("alpha") = 1.0);
    m.def(
        "author_profile",
        [](const std::string& author_id, const Corpus& corpus, const CitationIndex& index,
           double alpha) { return author_profile(author_id, corpus, index, WeightExponent(alpha)); },
        py::arg("author_id"), py::arg("corpus"), py::arg("index"), py::arg("alpha") = 1.0);
    m.def(
        "collaboration_profile",
        [](const std::string& name, const Corpus& corpus, const CitationIndex& index, double alpha) {
            return collaboration_profile(name, corpus, index, WeightExponent(alpha));
        },
        py::arg("collab_name"), py::arg("corpus"), py::arg("index"), py::arg("alpha") = 1.0);
    m.def(
        "all_author_profiles",
        [](const Corpus& corpus, const CitationIndex& index, double alpha) {
            return all_author_profiles(corpus, index, WeightExponent(alpha));
        },
        py::arg("corpus"), py::arg("index"), py::arg("alpha") = 1.0);
    m.def(
        "all_collaboration_profiles",
        [](const Corpus& corpus, const CitationIndex& index, double alpha) {
            return all_collaboration_profiles(corpus, index, WeightExponent(alpha));
        },
        py::arg("corpus"), py::arg("index"), py::arg("alpha") = 1.0);
    m.def(
        "profiles_csv",
        [](const std::vector<EntityProfile>& profiles) {
            std::ostringstream out;
            write_profiles_csv(out, profiles);
            return out.str();
        },
        py::arg("profiles"));

    // scaling -------------------------------------------------------------
    py::class_<ScalingPoint>(m, "ScalingPoint")
        .def(py::init([](double n_aut, double value) { return ScalingPoint{n_aut, value}; }),
             py::arg("n_aut"), py::arg("value"))
        .def_readwrite("n_aut", &ScalingPoint::n_aut)
        .def_readwrite("value", &ScalingPoint::value);

    py::class_<BinSummary>(m, "BinSummary")
        .def_readonly("center", &BinSummary::center)
        .def_readonly("count", &BinSummary::count)
        .def_readonly("mean", &BinSummary::mean)
        .def_readonly("median", &BinSummary::median);

    py::class_<BinnedCurve>(m, "BinnedCurve")
        .def_readonly("bins", &BinnedCurve::bins)
        .def_readonly("bins_per_decade", &BinnedCurve::bins_per_decade)
        .def_readonly("min_bin_count", &BinnedCurve::min_bin_count);

    py::class_<ScalingFit>(m, "ScalingFit")
        .def_readonly("exponent", &ScalingFit::exponent)
        .def_readonly("amplitude", &ScalingFit::amplitude)
        .def_readonly("exponent_stderr", &ScalingFit::exponent_stderr)
        .def_readonly("r_squared", &ScalingFit::r_squared)
        .def_readonly("n_bins_used", &ScalingFit::n_bins_used)
        .def_property_readonly("estimator", [](const ScalingFit& f) {
            return std::string(estimator_name(f.estimator));
        });

    py::class_<LogNormalFit>(m, "LogNormalFit")
        .def_readonly("mu_log", &LogNormalFit::mu_log)
        .def_readonly("sigma_log", &LogNormalFit::sigma_log)
        .def_readonly("zero_fraction", &LogNormalFit::zero_fraction)
        .def_readonly("n_values", &LogNormalFit::n_values)
        .def_readonly("n_zero", &LogNormalFit::n_zero);

    py::class_<ExponentDecomposition>(m, "ExponentDecomposition")
        .def_readonly("p_pap", &ExponentDecomposition::p_pap)
        .def_readonly("p_cit", &ExponentDecomposition::p_cit)
        .def_readonly("p_totcit", &ExponentDecomposition::p_totcit)
        .def_readonly("delta", &ExponentDecomposition::delta)
        .def_readonly("tolerance", &ExponentDecomposition::tolerance)
        .def_readonly("pass_", &ExponentDecomposition::pass);

    m.def(
        "log_bin",
        [](const std::vector<ScalingPoint>& points, int bins_per_decade, int min_bin_count) {
            return log_bin(points, bins_per_decade, min_bin_count);
        },
        py::arg("points"), py::arg("bins_per_decade") = 4, py::arg("min_bin_count") = 3);
    m.def(
        "log_bin",
        [](const std::vector<std::pair<double, double>>& points, int bins_per_decade,
           int min_bin_count) {
            std::vector<ScalingPoint> converted;
            converted.reserve(points.size());
            for (const auto& [n, v] : points) converted.push_back({n, v});
            return log_bin(converted, bins_per_decade, min_bin_count);
        },
        py::arg("points"), py::arg("bins_per_decade") = 4, py::arg("min_bin_count") = 3);
    m.def(
        "fit_power_law",
        [](const BinnedCurve& curve, const std::string& estimator) {
            return fit_power_law(curve, estimator_from_name(estimator));
        },
        py::arg("curve"), py::arg("estimator") = "mean");
    m.def(
        "fit_lognormal", [](const std::vector<double>& values) { return fit_lognormal(values); },
        py::arg("values"));
    m.def("decompose_exponents", &decompose_exponents, py::arg("fit_pap"), py::arg("fit_cit"),
          py::arg("fit_totcit"), py::arg("tolerance") = 0.07);

    // synthcollab -----------------------------------------------------------
    py::class_<SynthConfig>(m, "SynthConfig")
        .def(py::init<>())
        .def_readwrite("s", &SynthConfig::s)
        .def_readwrite("n_collabs", &SynthConfig::n_collabs)
        .def_readwrite("naut_min", &SynthConfig::naut_min)
        .def_readwrite("naut_max", &SynthConfig::naut_max)
        .def_readwrite("papers_per_topic", &SynthConfig::papers_per_topic)
        .def_readwrite("sigma_log", &SynthConfig::sigma_log)
        .def_readwrite("base_median_cit", &SynthConfig::base_median_cit)
        .def_readwrite("seed", &SynthConfig::seed)
        .def_readwrite("deterministic_papers", &SynthConfig::deterministic_papers);

    py::class_<SynthCollaboration>(m, "SynthCollaboration")
        .def_readonly("index", &SynthCollaboration::index)
        .def_readonly("n_aut", &SynthCollaboration::n_aut)
        .def_readonly("n_sub", &SynthCollaboration::n_sub)
        .def_readonly("n_pap", &SynthCollaboration::n_pap)
        .def_readonly("citations", &SynthCollaboration::citations);

    py::class_<EquilibriumSolution>(m, "EquilibriumSolution")
        .def_readonly("s", &EquilibriumSolution::s)
        .def_readonly("p_pap", &EquilibriumSolution::p_pap)
        .def_readonly("p_cit", &EquilibriumSolution::p_cit)
        .def_readonly("iterations", &EquilibriumSolution::iterations);

    py::class_<TheoreticalExponents>(m, "TheoreticalExponents")
        .def_readonly("p_pap", &TheoreticalExponents::p_pap)
        .def_readonly("p_cit", &TheoreticalExponents::p_cit)
        .def_readonly("p_totcit", &TheoreticalExponents::p_totcit)
        .def_readonly("p_fcit", &TheoreticalExponents::p_fcit);

    m.def("solve_equilibrium_s", &solve_equilibrium_s, py::arg("s0") = 1.0, py::arg("tol") = 1e-12);
    m.def("theoretical_exponents", &theoretical_exponents, py::arg("s"));
    m.def("generate", &generate, py::arg("config"));
    m.def(
        "synthetic_corpus_with_stubs",
        [](const std::vector<SynthCollaboration>& collabs) {
            std::ostringstream out;
            write_synthetic_corpus_with_stubs(out, collabs);
            return out.str();
        },
        py::arg("collabs"));
    m.def(
        "synthetic_corpus_with_sidecar",
        [](const std::vector<SynthCollaboration>& collabs, double ref_count) {
            std::ostringstream corpus, sidecar;
            write_synthetic_corpus_with_sidecar(corpus, sidecar, collabs, ref_count);
            return py::make_tuple(corpus.str(), sidecar.str());
        },
        py::arg("collabs"), py::arg("ref_count_of_citers") = 25.0);

    // report / cli -----------------------------------------------------------
    m.def(
        "render_curve_svg",
        [](const std::string& curve_csv, const std::optional<std::string>& fit_csv) {
            return render_curve_svg(curve_csv, fit_csv);
        },
        py::arg("curve_csv"), py::arg("fit_csv") = std::nullopt);
    m.def("render_histogram_svg", &render_histogram_svg, py::arg("profiles_csv"),
          py::arg("bins_per_decade") = 4);
    m.def(
        "cli_run",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a CLI invocation; returns (exit_code, stdout, stderr).");
}
