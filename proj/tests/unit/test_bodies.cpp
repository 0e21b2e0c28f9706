#include <cmath>
#include <functional>

#include "doctest.h"
#include "isoloc/bodies/affine.hpp"
#include "isoloc/bodies/ball.hpp"
#include "isoloc/bodies/constructors.hpp"
#include "isoloc/bodies/io.hpp"
#include "isoloc/numkit/lp.hpp"

using namespace isoloc;

namespace {

Vector random_point(std::size_t n, RngStream& rng, double scale = 1.5) {
    Vector x(n);
    for (double& v : x) v = scale * rng.normal();
    return x;
}

double l1(const Vector& x) {
    double s = 0;
    for (double v : x) s += std::abs(v);
    return s;
}

double linf(const Vector& x) {
    double s = 0;
    for (double v : x) s = std::max(s, std::abs(v));
    return s;
}

// Vertex-enumeration oracle for the support of {A x <= b}.
double enumerated_support(const Facets& f, const Vector& theta) {
    const std::size_t m = f.a.rows(), n = f.a.cols();
    double best = -1e300;
    std::vector<std::size_t> idx(n);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t start) {
        if (k == n) {
            Matrix sub(n, n);
            Vector rhs(n);
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t j = 0; j < n; ++j) sub(r, j) = f.a(idx[r], j);
                rhs[r] = f.b[idx[r]];
            }
            try {
                const Vector x = solve(sub, rhs);
                for (std::size_t i = 0; i < m; ++i)
                    if (dot(f.a.row(i), x) > f.b[i] + 1e-9) return;
                best = std::max(best, dot(theta, x));
            } catch (const NumericError&) {
            }
            return;
        }
        for (std::size_t i = start; i < m; ++i) {
            idx[k] = i;
            rec(k + 1, i + 1);
        }
    };
    rec(0, 0);
    return best;
}

std::vector<BodyPtr> sample_bodies() {
    RngStream rng(101);
    std::vector<BodyPtr> out{cube(3), cross_polytope(3), simplex(3), ball(3, 2.0),
                             cube(3, 1.0, Representation::h), cross_polytope(3, 1.0, Representation::v),
                             simplex(4, 1.0, Representation::v)};
    const Matrix t = gaussian_matrix(3, rng) + Matrix::identity(3) * 2.0;
    out.push_back(linear_image(ball(3, 1.0), t));
    out.push_back(linear_image(cube(3, 1.0, Representation::v), t));
    const Vector y{0.2, -0.1, 0.3};
    out.push_back(translate(ball(3, 1.0), y));
    out.push_back(translate(cube(3, 1.0, Representation::h), y));
    return out;
}

}  // namespace

TEST_CASE("gauge examples") {
    CHECK(cube(3)->gauge(Vector{0.5, -2.0, 1.0}) == doctest::Approx(2.0));
    CHECK(ball(3, 2.0)->gauge(Vector{3.0, 0.0, 0.0}) == doctest::Approx(1.5));
    const auto cross_v = cross_polytope(2, 1.0, Representation::v);
    CHECK(cross_v->gauge(Vector{0.3, 0.3}) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(cube(2)->gauge(Vector{0.0, 0.0}) == 0.0);
}

TEST_CASE("LP gauges match closed-form norms") {
    RngStream rng(102);
    for (std::size_t n : {2u, 3u, 5u}) {
        const auto cross_v = cross_polytope(n, 1.0, Representation::v);
        const auto cube_v = cube(n, 1.0, Representation::v);
        for (int k = 0; k < 200; ++k) {
            const Vector x = random_point(n, rng);
            CHECK(std::abs(cross_v->gauge(x) - l1(x)) <= 1e-9 * (1 + l1(x)));
            CHECK(std::abs(cube_v->gauge(x) - linf(x)) <= 1e-9 * (1 + linf(x)));
        }
    }
}

TEST_CASE("H and V representations agree") {
    RngStream rng(103);
    for (std::size_t n : {2u, 3u, 4u}) {
        for (const std::string name : {"cube", "crosspoly", "simplex"}) {
            const auto h = named_body(name, n, Representation::h);
            const auto v = named_body(name, n, Representation::v);
            const auto both = named_body(name, n, Representation::both);
            REQUIRE(h->facets());
            REQUIRE_FALSE(h->vertices());
            REQUIRE(v->vertices());
            REQUIRE_FALSE(v->facets());
            for (int k = 0; k < 1000; ++k) {
                const Vector x = random_point(n, rng);
                const double gh = h->gauge(x), gv = v->gauge(x), gb = both->gauge(x);
                CHECK(std::abs(gh - gv) <= 1e-8);
                CHECK(std::abs(gh - gb) <= 1e-8);
                if (k < 200) CHECK(std::abs(h->support(x) - v->support(x)) <= 1e-8);
            }
        }
    }
}

TEST_CASE("support examples and enumeration oracle") {
    CHECK(cube(2)->support(Vector{1.0, 1.0}) == doctest::Approx(2.0));
    RngStream rng(104);
    const Vector u = uniform_sphere(4, rng);
    CHECK(ball(4, 1.7)->support(u) == doctest::Approx(1.7));
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng.below(2);
        const std::size_t m = n + 3 + rng.below(4);
        // Random polytope containing the unit ball's interior near the origin.
        Matrix a(m + 2 * n, n);
        Vector b(m + 2 * n);
        for (std::size_t i = 0; i < m; ++i) {
            const Vector r = uniform_sphere(n, rng);
            for (std::size_t j = 0; j < n; ++j) a(i, j) = r[j];
            b[i] = 0.5 + rng.uniform();
        }
        for (std::size_t j = 0; j < n; ++j) {
            a(m + 2 * j, j) = 1.0;
            a(m + 2 * j + 1, j) = -1.0;
            b[m + 2 * j] = b[m + 2 * j + 1] = 3.0;
        }
        const auto p = make_hpolytope(a, b);
        for (int k = 0; k < 10; ++k) {
            const Vector th = random_point(n, rng);
            CHECK(std::abs(p->support(th) - enumerated_support(*p->facets(), th)) <= 1e-8 * (1 + norm(th)));
        }
    }
}

TEST_CASE("chord examples") {
    const auto c2 = cube(2);
    auto ch = c2->chord(Vector{0.0, 0.0}, Vector{1.0, 0.0});
    CHECK(ch.lower == doctest::Approx(-1.0));
    CHECK(ch.upper == doctest::Approx(1.0));
    ch = c2->chord(Vector{0.5, 0.0}, Vector{1.0, 0.0});
    CHECK(ch.lower == doctest::Approx(-1.5));
    CHECK(ch.upper == doctest::Approx(0.5));
    RngStream rng(105);
    const Vector d = uniform_sphere(3, rng);
    ch = ball(3, 2.5)->chord(Vector{0, 0, 0}, d);
    CHECK(ch.lower == doctest::Approx(-2.5));
    CHECK(ch.upper == doctest::Approx(2.5));
    CHECK_THROWS_AS(c2->chord(Vector{1.5, 0.0}, Vector{1.0, 0.0}), InvalidBodyError);
}

TEST_CASE("chord endpoints lie on the unit level set") {
    RngStream rng(106);
    for (const auto& body : sample_bodies()) {
        const std::size_t n = body->dim();
        for (int k = 0; k < 50; ++k) {
            Vector x = random_point(n, rng, 1.0);
            const double g = body->gauge(x);
            // Pull x inside.
            const double pull = 0.9 * rng.uniform() / std::max(g, 1e-12);
            for (double& v : x) v *= pull;
            const Vector d = uniform_sphere(n, rng);
            const auto ch = body->chord(x, d);
            CHECK(ch.lower < 0.0);
            CHECK(ch.upper > 0.0);
            Vector p = x, q = x;
            axpy(ch.upper, d, p);
            axpy(ch.lower, d, q);
            CHECK(std::abs(body->gauge(p) - 1.0) <= 1e-9);
            CHECK(std::abs(body->gauge(q) - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("gauge homogeneity and convexity") {
    RngStream rng(107);
    for (const auto& body : sample_bodies()) {
        const std::size_t n = body->dim();
        CHECK(body->gauge(Vector(n, 0.0)) == 0.0);
        for (int k = 0; k < 1000; ++k) {
            const Vector x = random_point(n, rng);
            const Vector y = random_point(n, rng);
            const double gx = body->gauge(x);
            for (double lam : {0.0, 0.5, 2.0})
                CHECK(std::abs(body->gauge(lam * x) - lam * gx) <= 1e-9 * (1 + gx));
            const Vector mid = 0.5 * (x + y);
            CHECK(body->gauge(mid) <= 0.5 * (gx + body->gauge(y)) + 1e-9);
        }
    }
}

TEST_CASE("polar bodies") {
    const auto pb = ball(3, 2.0)->polar();
    CHECK(pb->gauge(Vector{1.0, 0.0, 0.0}) == doctest::Approx(2.0));
    CHECK(std::dynamic_pointer_cast<const Ball>(pb)->r() == doctest::Approx(0.5));
    RngStream rng(108);
    const auto cube_polar = cube(3, 1.0, Representation::h)->polar();
    const auto cross = cross_polytope(3, 1.0, Representation::v);
    for (int k = 0; k < 100; ++k) {
        const Vector x = random_point(3, rng);
        CHECK(cube_polar->gauge(x) == doctest::Approx(cross->gauge(x)).epsilon(1e-10));
        CHECK(cube(3)->polar()->gauge(x) == doctest::Approx(l1(x)).epsilon(1e-10));
    }
    // Random V-polytope: gauge of the polar equals the support function.
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Vector> verts;
        for (int j = 0; j < 12; ++j) verts.push_back(random_point(3, rng));
        for (std::size_t i = 0; i < 3; ++i) {
            for (double s : {2.0, -2.0}) {
                Vector e(3, 0.0);
                e[i] = s;
                verts.push_back(e);
            }
        }
        const auto p = make_vpolytope(verts);
        const auto pp = p->polar();
        const auto ppp = pp->polar();
        for (int k = 0; k < 100; ++k) {
            const Vector th = random_point(3, rng);
            CHECK(std::abs(pp->gauge(th) - p->support(th)) <= 1e-8 * (1 + p->support(th)));
            if (k < 20) CHECK(std::abs(ppp->gauge(th) - p->gauge(th)) <= 1e-8 * (1 + p->gauge(th)));
        }
    }
    CHECK_THROWS_AS(translate(ball(2, 1.0), Vector{0.1, 0.0})->polar(), InvalidBodyError);
}

TEST_CASE("duality on polytopes and balls") {
    RngStream rng(109);
    for (const auto& body : sample_bodies()) {
        BodyPtr polar;
        try {
            polar = body->polar();
        } catch (const InvalidBodyError&) {
            continue;
        }
        for (int k = 0; k < 100; ++k) {
            const Vector th = random_point(body->dim(), rng);
            const double h = body->support(th);
            CHECK(std::abs(polar->gauge(th) - h) <= 1e-8 * (1 + std::abs(h)));
        }
    }
}

TEST_CASE("radius") {
    for (std::size_t n : {2u, 5u}) {
        CHECK(cube(n)->radius().value == doctest::Approx(std::sqrt(double(n))));
        CHECK(cube(n)->radius().certified);
    }
    CHECK(ball(4, 3.0)->radius().value == 3.0);
    const std::size_t n = 6;
    const auto iso_cube = cube(n, std::sqrt(3.0));
    CHECK(iso_cube->radius().value == doctest::Approx(std::sqrt(3.0 * n)));
    CHECK(iso_cube->radius().value <= std::sqrt(double(n * (n + 2))));
    // H-only, non-axis-aligned: sampled and flagged.
    RngStream rng(110);
    const Matrix u = haar_orthogonal(3, rng);
    const auto rotated = linear_image(cube(3, 1.0, Representation::h), u);
    const auto r = rotated->radius();
    CHECK_FALSE(r.certified);
    CHECK(r.value <= std::sqrt(3.0) + 1e-9);
    CHECK(r.value >= 0.9 * std::sqrt(3.0));
    CHECK(radius_polar(*cube(3)).value == doctest::Approx(1.0));
    CHECK(radius_polar(*ball(3, 4.0)).value == doctest::Approx(0.25));
}

TEST_CASE("linear images and translation") {
    RngStream rng(111);
    const auto b2 = linear_image(ball(3, 1.0), Matrix::identity(3) * 2.0);
    const Vector x = random_point(3, rng);
    CHECK(b2->gauge(x) == doctest::Approx(ball(3, 2.0)->gauge(x)));

    const Matrix u = haar_orthogonal(4, rng);
    const auto uk = linear_image(cube(4), u);
    for (int k = 0; k < 100; ++k) {
        const Vector y = random_point(4, rng);
        CHECK(uk->gauge(matvec(u, y)) == doctest::Approx(cube(4)->gauge(y)).epsilon(1e-10));
    }

    const auto v = cross_polytope(3, 1.0, Representation::v);
    const Matrix t = gaussian_matrix(3, rng) + Matrix::identity(3) * 3.0;
    const auto tv = std::dynamic_pointer_cast<const Polytope>(linear_image(v, t));
    REQUIRE(tv);
    const Matrix t_inv = inverse(t);
    for (std::size_t j = 0; j < v->vertices()->size(); ++j) {
        const Vector mapped = matvec(t, (*v->vertices())[j]);
        CHECK(max_abs(mapped - (*tv->vertices())[j]) < 1e-12);
    }
    for (int k = 0; k < 100; ++k) {
        const Vector y = random_point(3, rng);
        CHECK(std::abs(tv->gauge(y) - v->gauge(matvec(t_inv, y))) <= 1e-10 * (1 + v->gauge(matvec(t_inv, y))));
        CHECK(tv->support(y) == doctest::Approx(v->support(matvec_t(t, y))).epsilon(1e-10));
    }

    Matrix singular(2, 2);
    singular(0, 0) = 1.0;
    CHECK_THROWS_AS(linear_image(cube(2), singular), NumericError);

    // Translated ball: x ∈ λ(B + y) is solvable in closed form.
    const Vector shift{0.3, 0.0};
    const auto tb = translate(ball(2, 1.0), shift);
    CHECK(tb->gauge(Vector{1.3, 0.0}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(tb->gauge(Vector{-0.7, 0.0}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(tb->support(Vector{1.0, 0.0}) == doctest::Approx(1.3));
    const auto tc = translate(cube(2), shift);
    CHECK(tc->gauge(Vector{1.3, 0.0}) == doctest::Approx(1.0));
    CHECK(tc->gauge(Vector{-0.35, 0.0}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(translate(cube(2), Vector{1.5, 0.0}), InvalidBodyError);
    CHECK_THROWS_AS(translate(ball(2, 1.0), Vector{1.5, 0.0}), InvalidBodyError);
}

TEST_CASE("constructors") {
    const auto s2 = simplex(2, 1.0, Representation::v);
    const auto& v = *s2->vertices();
    REQUIRE(v.size() == 3);
    const double d01 = norm(v[0] - v[1]), d02 = norm(v[0] - v[2]), d12 = norm(v[1] - v[2]);
    CHECK(d01 == doctest::Approx(d02));
    CHECK(d01 == doctest::Approx(d12));
    CHECK(max_abs(v[0] + v[1] + v[2]) < 1e-14);
    for (std::size_t n : {1u, 3u, 7u}) CHECK(simplex(n)->vertices()->size() == n + 1);
    RngStream rng(112);
    const auto cp = cross_polytope(3);
    const auto cube_polar = cube(3)->polar();
    for (int k = 0; k < 100; ++k) {
        const Vector x = random_point(3, rng);
        CHECK(cp->gauge(x) == doctest::Approx(cube_polar->gauge(x)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(cube(0), DimensionError);
    CHECK_THROWS_AS(named_body("sphere", 3), InvalidBodyError);
    // Large dimensions keep only the small description.
    CHECK(cube(64)->vertices() == nullptr);
    CHECK(cross_polytope(16)->facets() == nullptr);
}

TEST_CASE("exact samplers stay inside and have the right second moment") {
    RngStream rng(113);
    const std::size_t n = 3;
    // E x₁² for the unit cube, unit ℓ¹ ball, unit ball and unit-circumradius simplex.
    const std::vector<std::pair<BodyPtr, double>> cases{
        {cube(n), 1.0 / 3.0},
        {cross_polytope(n), 2.0 / ((n + 1.0) * (n + 2.0))},
        {ball(n, 1.0), 1.0 / (n + 2.0)},
        {simplex(n), 1.0 / (n * (n + 2.0))}};
    for (const auto& [body, second] : cases) {
        REQUIRE(body->has_exact_sampler());
        const int draws = 200000;
        double s = 0.0, s2 = 0.0;
        Vector x(n);
        for (int i = 0; i < draws; ++i) {
            body->sample_exact(rng, x);
            CHECK(body->gauge(x) <= 1.0 + 1e-12);
            s += x[0] * x[0];
            s2 += x[0] * x[0] * x[0] * x[0];
        }
        const double m = s / draws;
        const double se = std::sqrt((s2 / draws - m * m) / draws);
        CHECK(std::abs(m - second) <= 4 * se);
    }
}

TEST_CASE("body literals") {
    using nlohmann::json;
    auto b = body_from_json(json::parse(R"({"type":"hpoly","A":[[1,0],[-1,0],[0,1],[0,-1]],"b":[1,1,1,1]})"));
    CHECK(b->gauge(Vector{0.5, -2.0}) == doctest::Approx(2.0));
    b = body_from_json(json::parse(R"({"type":"vpoly","vertices":[[1,0],[-1,0],[0,1],[0,-1]]})"));
    CHECK(b->gauge(Vector{0.3, 0.3}) == doctest::Approx(0.6));
    b = body_from_json(json::parse(R"({"type":"ball","n":3,"r":2})"));
    CHECK(b->gauge(Vector{3, 0, 0}) == doctest::Approx(1.5));
    b = body_from_json(json::parse(R"({"type":"named","name":"simplex","n":4})"));
    CHECK(b->vertices()->size() == 5);
    CHECK_THROWS_AS(body_from_json(json::parse(R"({"type":"ball","n":3,"radius":2})")), InvalidBodyError);
    CHECK_THROWS_AS(body_from_json(json::parse(R"({"type":"hpoly","A":[[1,0]],"b":[1]})")), InvalidBodyError);
    CHECK_THROWS_AS(body_from_json(json::parse(R"({"type":"vpoly","vertices":[[1,0],[2,0],[1,1]]})")),
                    InvalidBodyError);
    const auto round = body_from_json(body_to_json(*cube(2, 1.0, Representation::h)));
    CHECK(round->gauge(Vector{0.5, -2.0}) == doctest::Approx(2.0));
}
