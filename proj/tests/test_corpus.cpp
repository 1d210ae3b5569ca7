#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "collabmetrics/corpus.hpp"
#include "test_support.hpp"

using namespace collabmetrics;
using testsupport::make_record;
using testsupport::parse_lines;

TEST_CASE("empty input gives empty corpus and empty report") {
    auto result = parse_lines({});
    CHECK(result.corpus.empty());
    CHECK(result.rejected.empty());
    CHECK(result.warnings.empty());
    CHECK(result.lines_total == 0);
}

TEST_CASE("single record with 2 authors and 3 references") {
    auto result = parse_lines(
        {R"({"id":"p1","authors":["a1","a2"],"cats":["hep-ex"],"year":2001,"refs":["x1","x2","x3"]})"});
    REQUIRE(result.corpus.size() == 1);
    CHECK(result.rejected.empty());
    auto index = build_citation_index(result.corpus);
    CHECK(index.at(0).n_aut == 2);
    CHECK(index.at(0).n_ref == 3);
    CHECK(index.at(0).n_cit == 0);
}

TEST_CASE("record with empty author list is rejected with reason 'empty authors'") {
    auto result = parse_lines({R"({"id":"p1","authors":[],"cats":[],"year":2000,"refs":[]})"});
    CHECK(result.corpus.empty());
    REQUIRE(result.rejected.size() == 1);
    CHECK(result.rejected[0].line_number == 1);
    CHECK(result.rejected[0].reason == "empty authors");
}

TEST_CASE("malformed and incomplete lines are rejected with reasons") {
    auto result = parse_lines({
        R"({"id":"p1","authors":["a"],"cats":[],"year":2000,"refs":[]})",
        "{this is not json",
        R"([1,2,3])",
        R"({"authors":["a"],"cats":[],"year":2000,"refs":[]})",
        R"({"id":"p2","authors":["a"],"cats":[],"year":"old","refs":[]})",
        "",
    });
    CHECK(result.corpus.size() == 1);
    REQUIRE(result.rejected.size() == 5);
    CHECK(result.rejected[0].reason == "malformed record");
    CHECK(result.rejected[1].reason == "malformed record");
    CHECK(result.rejected[2].reason == "missing key 'id'");
    CHECK(result.rejected[3].reason == "invalid value for key 'year'");
    CHECK(result.rejected[4].reason == "empty line");
}

TEST_CASE("duplicate paper id is a hard failure naming both lines") {
    std::istringstream in(testsupport::join_lines({
        R"({"id":"p1","authors":["a"],"cats":[],"year":2000,"refs":[]})",
        R"({"id":"p2","authors":["a"],"cats":[],"year":2000,"refs":[]})",
        R"({"id":"p1","authors":["b"],"cats":[],"year":2001,"refs":[]})",
    }));
    CHECK_THROWS_WITH_AS(parse_corpus(in), "duplicate paper id 'p1' at lines 1 and 3",
                         std::runtime_error);
}

TEST_CASE("duplicate references are normalized to one with a warning") {
    auto result = parse_lines(
        {R"({"id":"p1","authors":["a"],"cats":[],"year":2000,"refs":["r1","r2","r1"]})"});
    REQUIRE(result.corpus.size() == 1);
    CHECK(result.corpus.paper(0).reference_ids == std::vector<std::string>{"r1", "r2"});
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings[0].message == "duplicate reference 'r1' removed");
}

TEST_CASE("self-reference is stripped with a warning") {
    auto result =
        parse_lines({R"({"id":"p1","authors":["a"],"cats":[],"year":2000,"refs":["p1","r2"]})"});
    REQUIRE(result.corpus.size() == 1);
    CHECK(result.corpus.paper(0).reference_ids == std::vector<std::string>{"r2"});
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings[0].message == "self-reference removed");
}

TEST_CASE("collaboration tags are trimmed, kept case-sensitive") {
    auto result = parse_lines({
        R"({"id":"p1","authors":["a"],"collab":" ATLAS ","cats":[],"year":2000,"refs":[]})",
        R"({"id":"p2","authors":["a"],"collab":"atlas","cats":[],"year":2000,"refs":[]})",
    });
    auto groups = group_official_collaborations(result.corpus);
    REQUIRE(groups.size() == 2);
    CHECK(groups.count("ATLAS") == 1);
    CHECK(groups.count("atlas") == 1);
}

TEST_CASE("rejection completeness: every line lands in corpus or report exactly once") {
    collabmetrics::SplitMix64 rng(7);
    std::vector<std::string> lines;
    std::size_t good = 0;
    for (int i = 0; i < 200; ++i) {
        if (rng.next_double() < 0.3) {
            lines.push_back("not a record");
        } else {
            lines.push_back(R"({"id":"p)" + std::to_string(i) +
                            R"(","authors":["a"],"cats":[],"year":2000,"refs":[]})");
            ++good;
        }
    }
    auto result = parse_lines(lines);
    CHECK(result.corpus.size() == good);
    CHECK(result.corpus.size() + result.rejected.size() == lines.size());
    CHECK(result.lines_total == lines.size());
}

TEST_CASE("rejection report TSV format") {
    auto result = parse_lines({"bad", R"({"id":"p","authors":["a"],"cats":[],"year":1,"refs":[]})"});
    std::ostringstream out;
    write_rejections_tsv(out, result.rejected);
    CHECK(out.str() == "1\tmalformed record\n");
}

TEST_CASE("citation index: uncited paper has zero counts") {
    Corpus corpus({make_record("p1", {"a"}, {"x"}), make_record("p2", {"b"})});
    auto index = build_citation_index(corpus);
    auto pos = corpus.find("p2");
    REQUIRE(pos.has_value());
    CHECK(index.at(*pos).n_cit == 0);
    CHECK(index.at(*pos).n_icit == 0.0);
}

TEST_CASE("paper cited by papers with 4 and 5 references: n_icit = 0.45") {
    Corpus corpus({
        make_record("t", {"a"}),
        make_record("c1", {"b"}, {"t", "x1", "x2", "x3"}),
        make_record("c2", {"c"}, {"t", "y1", "y2", "y3", "y4"}),
    });
    auto index = build_citation_index(corpus);
    auto pos = corpus.find("t");
    REQUIRE(pos.has_value());
    CHECK(index.at(*pos).n_cit == 2);
    CHECK(index.at(*pos).n_icit == doctest::Approx(0.45).epsilon(1e-12));
}

TEST_CASE("closed corpus: individual citations sum to the count of citing papers") {
    // every reference resolves internally, so each paper with references
    // distributes exactly total weight one
    Corpus corpus({
        make_record("p1", {"a"}),
        make_record("p2", {"b"}, {"p1"}),
        make_record("p3", {"c"}, {"p1", "p2"}),
        make_record("p4", {"d"}, {"p1", "p2", "p3"}),
        make_record("p5", {"e"}, {"p4"}),
    });
    auto index = build_citation_index(corpus);
    double icit_sum = 0.0;
    long long papers_with_refs = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        icit_sum += index.at(i).n_icit;
        if (!corpus.paper(i).reference_ids.empty()) ++papers_with_refs;
    }
    CHECK(papers_with_refs == 4);
    CHECK(icit_sum == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("order invariance: permuting input lines yields identical corpus and index") {
    std::vector<std::string> lines = {
        R"({"id":"p1","authors":["a","b"],"cats":["hep-ex"],"year":2000,"refs":["p2","p3"]})",
        R"({"id":"p2","authors":["c"],"collab":"X","cats":[],"year":2001,"refs":["p3"]})",
        R"({"id":"p3","authors":["d","e","f"],"cats":["astro-ph"],"year":2002,"refs":[]})",
        R"({"id":"p4","authors":["a"],"cats":[],"year":2003,"refs":["p1","p2","p3"]})",
    };
    auto base = parse_lines(lines);
    auto base_index = build_citation_index(base.corpus);

    collabmetrics::SplitMix64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        auto shuffled = lines;
        for (std::size_t i = shuffled.size(); i > 1; --i) {
            std::swap(shuffled[i - 1], shuffled[rng.next_u64() % i]);
        }
        auto permuted = parse_lines(shuffled);
        CHECK(permuted.corpus == base.corpus);
        auto index = build_citation_index(permuted.corpus);
        REQUIRE(index.size() == base_index.size());
        for (std::size_t i = 0; i < index.size(); ++i) {
            CHECK(index.at(i).n_cit == base_index.at(i).n_cit);
            // bit-identical accumulation, not just approximate equality
            CHECK(index.at(i).n_icit == base_index.at(i).n_icit);
        }
    }
}

TEST_CASE("citation-edge conservation against the brute-force double loop") {
    collabmetrics::SplitMix64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 99);
        auto records = testsupport::random_corpus(rng, n);
        const long long expected = testsupport::brute_force_total_citations(records);
        Corpus corpus(records);
        auto index = build_citation_index(corpus);
        long long total = 0;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            total += index.at(i).n_cit;
            CHECK(index.at(i).n_icit >= 0.0);
            CHECK(index.at(i).n_icit <= static_cast<double>(index.at(i).n_cit));
            CHECK((index.at(i).n_icit == 0.0) == (index.at(i).n_cit == 0));
        }
        CHECK(total == expected);
    }
}

TEST_CASE("references to unknown ids are valid and produce no edges") {
    Corpus corpus({make_record("p1", {"a"}, {"nowhere", "also-nowhere"})});
    auto index = build_citation_index(corpus);
    CHECK(index.at(0).n_ref == 2);
    CHECK(index.at(0).n_cit == 0);
}

TEST_CASE("category classification") {
    auto with_cats = [](std::vector<std::string> cats) {
        return make_record("p", {"a"}, {}, "", std::move(cats));
    };
    CHECK(classify_category(with_cats({"hep-ex"})) == Category::Experiment);
    CHECK(classify_category(with_cats({"nucl-ex"})) == Category::Experiment);
    CHECK(classify_category(with_cats({"astro-ph"})) == Category::AstroCosmo);
    CHECK(classify_category(with_cats({"astro-ph.CO"})) == Category::AstroCosmo);
    CHECK(classify_category(with_cats({"hep-ph"})) == Category::Theory);
    CHECK(classify_category(with_cats({"hep-th"})) == Category::Theory);
    CHECK(classify_category(with_cats({"hep-lat"})) == Category::Theory);
    CHECK(classify_category(with_cats({"nucl-th"})) == Category::Theory);
    CHECK(classify_category(with_cats({"gr-qc"})) == Category::Theory);
    CHECK(classify_category(with_cats({})) == Category::Other);
    CHECK(classify_category(with_cats({"cs.LG"})) == Category::Other);
    // precedence over the whole code list
    CHECK(classify_category(with_cats({"hep-th", "hep-ex"})) == Category::Experiment);
    CHECK(classify_category(with_cats({"hep-ph", "astro-ph"})) == Category::AstroCosmo);
    CHECK(classify_category(with_cats({"astro-ph", "nucl-ex"})) == Category::Experiment);
}

TEST_CASE("official collaboration grouping") {
    SUBCASE("no tagged papers gives an empty map") {
        Corpus corpus({make_record("p1", {"a"})});
        CHECK(group_official_collaborations(corpus).empty());
    }
    SUBCASE("papers group by tag regardless of author lists") {
        Corpus corpus({
            make_record("p1", {"a", "b"}, {}, "ATLAS"),
            make_record("p2", {"c"}, {}, "ATLAS"),
            make_record("p3", {"d", "e"}, {}, "ATLAS"),
            make_record("p4", {"f"}, {}, "CMS"),
        });
        auto groups = group_official_collaborations(corpus);
        REQUIRE(groups.size() == 2);
        CHECK(groups.at("ATLAS").size() == 3);
        CHECK(groups.at("CMS").size() == 1);
    }
}

TEST_CASE("citation sidecar loader") {
    Corpus corpus({make_record("p1", {"a", "b"}), make_record("p2", {"c"}, {"x", "y"})});

    SUBCASE("valid sidecar overrides counts, keeps n_ref and n_aut from records") {
        std::istringstream in(
            "paper_id,n_cit,n_ref_of_citers_harmonic\n"
            "p1,10,0.4\n");
        auto index = load_citation_sidecar(corpus, in);
        auto p1 = corpus.find("p1");
        auto p2 = corpus.find("p2");
        CHECK(index.at(*p1).n_cit == 10);
        CHECK(index.at(*p1).n_icit == 0.4);
        CHECK(index.at(*p1).n_aut == 2);
        CHECK(index.at(*p2).n_cit == 0);
        CHECK(index.at(*p2).n_ref == 2);
    }
    SUBCASE("unexpected header") {
        std::istringstream in("id,cit\np1,1\n");
        CHECK_THROWS_AS(load_citation_sidecar(corpus, in), std::runtime_error);
    }
    SUBCASE("unknown paper id") {
        std::istringstream in("paper_id,n_cit,n_ref_of_citers_harmonic\nnope,1,0.1\n");
        CHECK_THROWS_AS(load_citation_sidecar(corpus, in), std::runtime_error);
    }
    SUBCASE("counts violating 0 <= n_icit <= n_cit") {
        std::istringstream over("paper_id,n_cit,n_ref_of_citers_harmonic\np1,1,1.5\n");
        CHECK_THROWS_AS(load_citation_sidecar(corpus, over), std::runtime_error);
        std::istringstream zero_mismatch("paper_id,n_cit,n_ref_of_citers_harmonic\np1,3,0\n");
        CHECK_THROWS_AS(load_citation_sidecar(corpus, zero_mismatch), std::runtime_error);
    }
}

TEST_CASE("corpus constructor enforces record invariants") {
    CHECK_THROWS_AS(Corpus({make_record("p1", {})}), std::invalid_argument);
    CHECK_THROWS_AS(Corpus({make_record("p1", {"a"}, {"p1"})}), std::invalid_argument);
    CHECK_THROWS_AS(Corpus({make_record("p1", {"a"}, {"r", "r"})}), std::invalid_argument);
    CHECK_THROWS_AS(Corpus({make_record("p1", {"a"}), make_record("p1", {"b"})}),
                    std::runtime_error);
}
