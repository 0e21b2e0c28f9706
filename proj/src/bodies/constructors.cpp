#include "isoloc/bodies/constructors.hpp"

#include <cmath>

#include "isoloc/bodies/ball.hpp"

namespace isoloc {

namespace {

constexpr std::size_t kAutoLimit = 1024;

bool want(Representation rep, bool is_h, std::size_t count) {
    switch (rep) {
        case Representation::h: return is_h;
        case Representation::v: return !is_h;
        case Representation::both: return true;
        case Representation::automatic: return count <= kAutoLimit;
    }
    return false;
}

void check_dim(std::size_t n) {
    if (n < 1) throw DimensionError("named body: n must be >= 1");
}

// Pure h/v requests get no closed-form shape, so every operation runs
// through the requested description.
bool structured(Representation rep) { return rep == Representation::both || rep == Representation::automatic; }

std::size_t pow2(std::size_t n) { return n >= 63 ? std::size_t(-1) : std::size_t(1) << n; }

std::string scaled_label(const std::string& name, std::size_t n, double s) {
    std::string label = name + "(n=" + std::to_string(n);
    if (s != 1.0) label += ",s=" + std::to_string(s);
    return label + ")";
}

}  // namespace

std::shared_ptr<const Polytope> cube(std::size_t n, double s, Representation rep) {
    check_dim(n);
    if (!(s > 0.0)) throw InvalidBodyError("cube: half-width must be positive");
    std::optional<Facets> f;
    if (want(rep, true, 2 * n)) {
        Facets g{Matrix(2 * n, n), Vector(2 * n, s)};
        for (std::size_t i = 0; i < n; ++i) {
            g.a(2 * i, i) = 1.0;
            g.a(2 * i + 1, i) = -1.0;
        }
        f = std::move(g);
    }
    std::optional<std::vector<Vector>> v;
    if (want(rep, false, pow2(n))) {
        if (n > 20) throw DimensionError("cube: vertex list too large");
        std::vector<Vector> verts;
        for (std::size_t mask = 0; mask < pow2(n); ++mask) {
            Vector x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1 ? s : -s;
            verts.push_back(std::move(x));
        }
        v = std::move(verts);
    }
    std::optional<PolytopeShape> shape;
    if (structured(rep)) shape = PolytopeShape{PolytopeShape::Kind::box, s, std::nullopt, std::nullopt};
    return std::make_shared<Polytope>(n, std::move(f), std::move(v), shape, scaled_label("cube", n, s));
}

std::shared_ptr<const Polytope> cross_polytope(std::size_t n, double s, Representation rep) {
    check_dim(n);
    if (!(s > 0.0)) throw InvalidBodyError("cross_polytope: radius must be positive");
    std::optional<Facets> f;
    if (want(rep, true, pow2(n))) {
        if (n > 20) throw DimensionError("cross_polytope: facet list too large");
        Facets g{Matrix(pow2(n), n), Vector(pow2(n), s)};
        for (std::size_t mask = 0; mask < pow2(n); ++mask)
            for (std::size_t i = 0; i < n; ++i) g.a(mask, i) = (mask >> i) & 1 ? 1.0 : -1.0;
        f = std::move(g);
    }
    std::optional<std::vector<Vector>> v;
    if (want(rep, false, 2 * n)) {
        std::vector<Vector> verts;
        for (std::size_t i = 0; i < n; ++i) {
            for (double sgn : {1.0, -1.0}) {
                Vector x(n, 0.0);
                x[i] = sgn * s;
                verts.push_back(std::move(x));
            }
        }
        v = std::move(verts);
    }
    std::optional<PolytopeShape> shape;
    if (structured(rep)) shape = PolytopeShape{PolytopeShape::Kind::cross, s, std::nullopt, std::nullopt};
    return std::make_shared<Polytope>(n, std::move(f), std::move(v), shape, scaled_label("crosspoly", n, s));
}

std::vector<Vector> regular_simplex_vertices(std::size_t n) {
    check_dim(n);
    // Centred standard basis of ℝⁿ⁺¹ expressed in an orthonormal basis of the
    // hyperplane Σ xᵢ = 0 (Helmert basis), then scaled to unit norm.
    std::vector<Vector> basis;
    for (std::size_t k = 1; k <= n; ++k) {
        Vector h(n + 1, 0.0);
        const double c = 1.0 / std::sqrt(double(k) * (k + 1));
        for (std::size_t i = 0; i < k; ++i) h[i] = c;
        h[k] = -double(k) * c;
        basis.push_back(std::move(h));
    }
    const double scale = std::sqrt(double(n + 1) / double(n));
    std::vector<Vector> verts;
    for (std::size_t j = 0; j <= n; ++j) {
        Vector x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = scale * basis[k][j];
        verts.push_back(std::move(x));
    }
    return verts;
}

std::shared_ptr<const Polytope> simplex(std::size_t n, double r, Representation rep) {
    check_dim(n);
    if (!(r > 0.0)) throw InvalidBodyError("simplex: circumradius must be positive");
    std::vector<Vector> verts = regular_simplex_vertices(n);
    // Facet opposite vᵢ: −vᵢ·x <= r/n, since vⱼ·vᵢ = −r²/n for j ≠ i.
    std::optional<Facets> f;
    if (want(rep, true, n + 1)) {
        Facets g{Matrix(n + 1, n), Vector(n + 1, 1.0)};
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k) g.a(i, k) = -double(n) * verts[i][k] / r;
        f = std::move(g);
    }
    for (auto& v : verts)
        for (double& x : v) x *= r;
    std::optional<std::vector<Vector>> v;
    if (want(rep, false, n + 1)) v = std::move(verts);
    std::optional<PolytopeShape> shape;
    if (structured(rep)) shape = PolytopeShape{PolytopeShape::Kind::simplex, 1.0, std::nullopt, std::nullopt};
    return std::make_shared<Polytope>(n, std::move(f), std::move(v), shape, scaled_label("simplex", n, r));
}

BodyPtr ball(std::size_t n, double r) { return std::make_shared<Ball>(n, r); }

std::string canonical_body_name(const std::string& name) {
    if (name == "cube") return "cube";
    if (name == "ball") return "ball";
    if (name == "crosspoly" || name == "cross-polytope" || name == "cross_polytope" || name == "cross")
        return "crosspoly";
    if (name == "simplex") return "simplex";
    throw InvalidBodyError("unknown body name: " + name);
}

std::vector<std::string> named_body_list() { return {"cube", "ball", "crosspoly", "simplex"}; }

BodyPtr named_body(const std::string& name, std::size_t n, Representation rep) {
    const std::string c = canonical_body_name(name);
    if (c == "cube") return cube(n, 1.0, rep);
    if (c == "ball") return ball(n, 1.0);
    if (c == "crosspoly") return cross_polytope(n, 1.0, rep);
    return simplex(n, 1.0, rep);
}

}  // namespace isoloc
