#include <catch2/catch_amalgamated.hpp>

#include "drc/graph.hpp"
#include "drc/matrices.hpp"
#include "drc/selfcheck.hpp"
#include "drc/spectral.hpp"

using namespace drc;

TEST_CASE("build_graph validates and normalizes edges") {
    const Graph g = build_graph(4, {{2, 0}, {1, 0}, {2, 3}});
    REQUIRE(g.n == 4);
    REQUIRE(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {2, 3}});
    REQUIRE(g.degrees() == std::vector<int>{2, 1, 2, 1});

    CHECK_THROWS_AS(build_graph(3, {{1, 1}}), validation_error);
    CHECK_THROWS_AS(build_graph(3, {{0, 3}}), validation_error);
    CHECK_THROWS_AS(build_graph(3, {{-1, 0}}), validation_error);
    CHECK_THROWS_AS(build_graph(3, {{0, 1}, {1, 0}}), validation_error);
    CHECK_THROWS_AS(build_graph(0, {}), validation_error);
}

TEST_CASE("generators produce the expected edge sets") {
    CHECK(cycle_graph(6).edges.size() == 6);
    CHECK(path_graph(4).edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
    CHECK(complete_graph(4).edges.size() == 6);
    CHECK(cycle_graph(2).edges == std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(cycle_graph(3) == complete_graph(3));
    for (int d : cycle_graph(6).degrees()) CHECK(d == 2);
}

TEST_CASE("connectivity detection and the connected precondition") {
    CHECK(is_connected(path_graph(5)));
    CHECK(is_connected(build_graph(1, {})));
    const Graph split = build_graph(4, {{0, 1}, {2, 3}});
    CHECK_FALSE(is_connected(split));
    CHECK_THROWS_AS(build_matrices(split), validation_error);
}

TEST_CASE("two-node matrices match the closed forms") {
    const GraphMatrices gm = build_matrices(path_graph(2));
    Matrix l_expect(2, 2), q_expect(2, 2);
    l_expect << 1, -1, -1, 1;
    q_expect << 0.5, -0.5, -0.5, 0.5;
    CHECK((gm.laplacian - l_expect).cwiseAbs().maxCoeff() == 0.0);
    CHECK((gm.localized_projection - q_expect).cwiseAbs().maxCoeff() < 1e-15);

    Vector evals;
    Matrix evecs;
    symmetric_eigen(gm.laplacian, evals, evecs);
    CHECK(evals(0) == Catch::Approx(0.0).margin(1e-12));
    CHECK(evals(1) == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("six-cycle Laplacian spectrum and scaling") {
    const GraphMatrices gm = build_matrices(cycle_graph(6));
    Vector evals;
    Matrix evecs;
    symmetric_eigen(gm.laplacian, evals, evecs);
    const double expect[] = {0.0, 1.0, 1.0, 3.0, 3.0, 4.0};
    for (int i = 0; i < 6; ++i) CHECK(evals(i) == Catch::Approx(expect[i]).margin(1e-12));
    CHECK((gm.scaling - Matrix::Identity(6, 6) / 3.0).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("three-node path: degrees drive the scaling") {
    const GraphMatrices gm = build_matrices(path_graph(3));
    CHECK(gm.scaling(0, 0) == Catch::Approx(0.5));
    CHECK(gm.scaling(1, 1) == Catch::Approx(1.0 / 3.0));
    CHECK(gm.scaling(2, 2) == Catch::Approx(0.5));
    CHECK((gm.localized_projection - gm.scaling * gm.laplacian).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((gm.localized_projection * Vector::Ones(3)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("projector identities hold on random connected graphs") {
    const CheckResult r = selfcheck::graph_invariants(7);
    INFO(r.detail);
    CHECK(r.ok);
}

TEST_CASE("column-space projector agrees with the pseudoinverse construction") {
    const CheckResult r = selfcheck::projector_pinv_oracle(7);
    INFO(r.detail);
    CHECK(r.ok);
}

TEST_CASE("rng is deterministic and respects ranges") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    Rng c(1);
    bool hit_lo = false, hit_hi = false;
    for (int i = 0; i < 200; ++i) {
        const int v = c.uniform_int(2, 4);
        CHECK(v >= 2);
        CHECK(v <= 4);
        hit_lo = hit_lo || v == 2;
        hit_hi = hit_hi || v == 4;
    }
    CHECK(hit_lo);
    CHECK(hit_hi);
    Rng d(9);
    for (int i = 0; i < 100; ++i) {
        const double v = d.uniform(-2.0, 3.0);
        CHECK(v >= -2.0);
        CHECK(v < 3.0);
    }
}

TEST_CASE("random_connected_graph is always connected") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const int n = rng.uniform_int(2, 12);
        const Graph g = random_connected_graph(n, rng);
        CHECK(g.n == n);
        CHECK(is_connected(g));
        CHECK(g.edges.size() >= static_cast<std::size_t>(n - 1));
    }
}
