#include "isoloc/bodies/polytope.hpp"

#include <cmath>
#include <limits>

#include "isoloc/numkit/lp.hpp"

namespace isoloc {

namespace {

constexpr std::uint64_t kRadiusSeed = 0x5eed5eed;

Vector apply_or_copy(const std::optional<Matrix>& m, std::span<const double> x) {
    return m ? matvec(*m, x) : Vector(x.begin(), x.end());
}

Vector apply_t_or_copy(const std::optional<Matrix>& m, std::span<const double> x) {
    return m ? matvec_t(*m, x) : Vector(x.begin(), x.end());
}

double norm1(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

double norm_inf(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

// Rows of the polar constraint system (v_j − origin)·y <= 1.
Matrix shifted_vertex_rows(const std::vector<Vector>& verts, std::span<const double> origin) {
    const std::size_t n = verts.front().size();
    Matrix a(verts.size(), n);
    for (std::size_t j = 0; j < verts.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) a(j, i) = verts[j][i] - (origin.empty() ? 0.0 : origin[i]);
    return a;
}

}  // namespace

Polytope::Polytope(std::size_t n, std::optional<Facets> facets, std::optional<std::vector<Vector>> vertices,
                   std::optional<PolytopeShape> shape, std::string label, std::optional<Vector> shape_shift)
    : n_(n),
      facets_(std::move(facets)),
      vertices_(std::move(vertices)),
      shape_(std::move(shape)),
      shape_shift_(std::move(shape_shift)),
      label_(std::move(label)) {
    if (n_ == 0) throw DimensionError("Polytope: dimension must be >= 1");
    if (!facets_ && !vertices_) throw InvalidBodyError("Polytope: needs facets or vertices");
    if (facets_) {
        check_same_dim(facets_->a.cols(), n_, "Polytope: facet matrix");
        check_same_dim(facets_->b.size(), facets_->a.rows(), "Polytope: offsets");
        for (double bi : facets_->b)
            if (!(bi > 0.0)) throw InvalidBodyError("Polytope: offsets must be positive (origin interior)");
    }
    if (vertices_) {
        if (vertices_->size() < n_ + 1) throw InvalidBodyError("Polytope: fewer than n+1 vertices");
        for (const auto& v : *vertices_) check_same_dim(v.size(), n_, "Polytope: vertex");
    }
    if (shape_ && shape_->kind == PolytopeShape::Kind::simplex && !vertices_)
        throw InvalidBodyError("Polytope: simplex shape needs vertices");
}

double Polytope::gauge_by_lp(std::span<const double> x, std::span<const double> origin) const {
    const Vector b(vertices_->size(), 1.0);
    const auto r = lp_solve_status(x, shifted_vertex_rows(*vertices_, origin), b);
    if (r.status == LpStatus::unbounded) throw InvalidBodyError("gauge: point is not interior to " + label_);
    if (r.status == LpStatus::infeasible) throw NumericError("gauge: polar system infeasible");
    return std::max(0.0, r.value);
}

double Polytope::gauge(std::span<const double> x) const {
    check_same_dim(x.size(), n_, "gauge");
    if (shape_ && !shape_shift_ && shape_->kind != PolytopeShape::Kind::simplex) {
        const Vector w = apply_or_copy(shape_->inverse, x);
        const double g = shape_->kind == PolytopeShape::Kind::box ? norm_inf(w) : norm1(w);
        return g / shape_->scale;
    }
    if (facets_) {
        double g = 0.0;
        for (std::size_t i = 0; i < facets_->a.rows(); ++i) g = std::max(g, dot(facets_->a.row(i), x) / facets_->b[i]);
        return g;
    }
    if (norm_inf(x) == 0.0) return 0.0;
    return gauge_by_lp(x, {});
}

Vector Polytope::support_point(std::span<const double> theta) const {
    check_same_dim(theta.size(), n_, "support_point");
    if (vertices_) {
        std::size_t best = 0;
        double val = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < vertices_->size(); ++j) {
            const double s = dot((*vertices_)[j], theta);
            if (s > val) {
                val = s;
                best = j;
            }
        }
        return (*vertices_)[best];
    }
    if (shape_ && shape_->kind != PolytopeShape::Kind::simplex) {
        const Vector w = apply_t_or_copy(shape_->map, theta);
        Vector p(n_, 0.0);
        if (shape_->kind == PolytopeShape::Kind::box) {
            for (std::size_t i = 0; i < n_; ++i) p[i] = w[i] >= 0 ? shape_->scale : -shape_->scale;
        } else {
            std::size_t k = 0;
            for (std::size_t i = 1; i < n_; ++i)
                if (std::abs(w[i]) > std::abs(w[k])) k = i;
            p[k] = w[k] >= 0 ? shape_->scale : -shape_->scale;
        }
        p = apply_or_copy(shape_->map, p);
        if (shape_shift_) p = p + *shape_shift_;
        return p;
    }
    const auto r = lp_solve_status(theta, facets_->a, facets_->b);
    if (r.status != LpStatus::optimal) throw InvalidBodyError("support: polytope " + label_ + " is unbounded");
    return r.x;
}

double Polytope::support(std::span<const double> theta) const {
    check_same_dim(theta.size(), n_, "support");
    if (vertices_) {
        double s = -std::numeric_limits<double>::infinity();
        for (const auto& v : *vertices_) s = std::max(s, dot(v, theta));
        return s;
    }
    if (shape_ && shape_->kind != PolytopeShape::Kind::simplex) {
        const Vector w = apply_t_or_copy(shape_->map, theta);
        double h = shape_->scale * (shape_->kind == PolytopeShape::Kind::box ? norm1(w) : norm_inf(w));
        if (shape_shift_) h += dot(*shape_shift_, theta);
        return h;
    }
    return dot(support_point(theta), theta);
}

Chord Polytope::chord(std::span<const double> x, std::span<const double> d) const {
    check_same_dim(x.size(), n_, "chord: x");
    check_same_dim(d.size(), n_, "chord: d");
    if (facets_) {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < facets_->a.rows(); ++i) {
            const double ad = dot(facets_->a.row(i), d);
            const double slack = facets_->b[i] - dot(facets_->a.row(i), x);
            if (slack <= 0.0) throw InvalidBodyError("chord: x is not an interior point");
            if (ad > 0.0)
                hi = std::min(hi, slack / ad);
            else if (ad < 0.0)
                lo = std::max(lo, slack / ad);
        }
        if (!std::isfinite(lo) || !std::isfinite(hi)) throw InvalidBodyError("chord: body unbounded along direction");
        return {lo, hi};
    }
    if (shape_ && !shape_shift_) return Body::chord(x, d);
    // Gauge of K − x in direction ±d via the shifted polar system.
    const Vector neg = -1.0 * Vector(d.begin(), d.end());
    const double gu = gauge_by_lp(d, x);
    const double gl = gauge_by_lp(neg, x);
    if (!(gu > 0.0 && gl > 0.0)) throw InvalidBodyError("chord: body unbounded along direction");
    return {-1.0 / gl, 1.0 / gu};
}

RadiusBound Polytope::radius() const {
    if (vertices_) {
        double r = 0.0;
        for (const auto& v : *vertices_) r = std::max(r, norm(v));
        return {r, true};
    }
    if (shape_ && !shape_->map && !shape_shift_) {
        const double s = shape_->scale;
        return {shape_->kind == PolytopeShape::Kind::box ? s * std::sqrt(double(n_)) : s, true};
    }
    RngStream rng(kRadiusSeed, n_);
    double r = 0.0;
    for (std::size_t k = 0; k < 64 * n_; ++k) r = std::max(r, norm(support_point(uniform_sphere(n_, rng))));
    return {r, false};
}

BodyPtr Polytope::polar() const {
    std::optional<Facets> pf;
    std::optional<std::vector<Vector>> pv;
    if (vertices_) {
        pf = Facets{Matrix::from_rows(*vertices_), Vector(vertices_->size(), 1.0)};
    }
    if (facets_) {
        std::vector<Vector> verts;
        for (std::size_t i = 0; i < facets_->a.rows(); ++i) {
            const auto row = facets_->a.row(i);
            Vector v(row.begin(), row.end());
            for (double& c : v) c /= facets_->b[i];
            verts.push_back(std::move(v));
        }
        pv = std::move(verts);
    }
    std::optional<PolytopeShape> ps;
    if (shape_ && (!shape_shift_ || shape_->kind == PolytopeShape::Kind::simplex)) {
        PolytopeShape s;
        s.kind = shape_->kind;
        if (shape_->kind == PolytopeShape::Kind::box) s.kind = PolytopeShape::Kind::cross;
        if (shape_->kind == PolytopeShape::Kind::cross) s.kind = PolytopeShape::Kind::box;
        s.scale = 1.0 / shape_->scale;
        // (M S)° = M^{-T} S°
        if (shape_->inverse) s.map = shape_->inverse->transpose();
        if (shape_->map) s.inverse = shape_->map->transpose();
        if (s.kind != PolytopeShape::Kind::simplex || pv) ps = std::move(s);
    }
    return std::make_shared<Polytope>(n_, std::move(pf), std::move(pv), std::move(ps), "polar(" + label_ + ")");
}

void Polytope::sample_exact(RngStream& rng, std::span<double> out) const {
    check_same_dim(out.size(), n_, "sample_exact");
    if (!shape_) return Body::sample_exact(rng, out);
    if (shape_->kind == PolytopeShape::Kind::simplex) {
        const auto& verts = *vertices_;
        Vector w(verts.size());
        double total = 0.0;
        for (double& x : w) total += (x = -std::log(rng.uniform_open()));
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t j = 0; j < verts.size(); ++j) axpy(w[j] / total, verts[j], out);
        return;
    }
    Vector z(n_);
    if (shape_->kind == PolytopeShape::Kind::box) {
        for (double& x : z) x = shape_->scale * (2.0 * rng.uniform() - 1.0);
    } else {
        // Uniform in the ℓ¹ ball: signed leading coordinates of a flat Dirichlet vector.
        double total = 0.0;
        for (double& x : z) total += (x = -std::log(rng.uniform_open()));
        total += -std::log(rng.uniform_open());
        for (double& x : z) x = shape_->scale * (rng.uniform() < 0.5 ? -x : x) / total;
    }
    const Vector p = apply_or_copy(shape_->map, z);
    for (std::size_t i = 0; i < n_; ++i) out[i] = p[i] + (shape_shift_ ? (*shape_shift_)[i] : 0.0);
}

std::shared_ptr<const Polytope> Polytope::mapped(const Matrix& t, const Matrix& t_inv) const {
    std::optional<Facets> f;
    if (facets_) f = Facets{facets_->a * t_inv, facets_->b};
    std::optional<std::vector<Vector>> v;
    if (vertices_) {
        std::vector<Vector> verts;
        verts.reserve(vertices_->size());
        for (const auto& x : *vertices_) verts.push_back(matvec(t, x));
        v = std::move(verts);
    }
    std::optional<PolytopeShape> s = shape_;
    if (s) {
        s->map = s->map ? t * *s->map : t;
        s->inverse = s->inverse ? *s->inverse * t_inv : t_inv;
    }
    std::optional<Vector> shift;
    if (shape_shift_) shift = matvec(t, *shape_shift_);
    return std::make_shared<Polytope>(n_, std::move(f), std::move(v), std::move(s), label_, std::move(shift));
}

std::shared_ptr<const Polytope> Polytope::shifted(std::span<const double> y) const {
    check_same_dim(y.size(), n_, "translate");
    std::optional<Facets> f;
    if (facets_) {
        Facets g = *facets_;
        for (std::size_t i = 0; i < g.a.rows(); ++i) g.b[i] += dot(g.a.row(i), y);
        f = std::move(g);
    }
    std::optional<std::vector<Vector>> v;
    if (vertices_) {
        std::vector<Vector> verts = *vertices_;
        for (auto& x : verts) axpy(1.0, y, x);
        v = std::move(verts);
    }
    if (!f) {
        // Origin must stay interior: −y strictly inside K.
        const Vector neg = -1.0 * Vector(y.begin(), y.end());
        if (!(gauge(neg) < 1.0)) throw InvalidBodyError("translate: origin leaves the body");
    }
    Vector shift(y.begin(), y.end());
    if (shape_shift_) shift = shift + *shape_shift_;
    return std::make_shared<Polytope>(n_, std::move(f), std::move(v), shape_, label_, std::move(shift));
}

std::shared_ptr<const Polytope> make_hpolytope(Matrix a, Vector b, std::string label, bool trusted) {
    const std::size_t n = a.cols();
    for (double bi : b)
        if (!(bi > 0.0)) throw InvalidBodyError("hpoly: offsets must be positive (origin interior)");
    auto p = std::make_shared<Polytope>(n, Facets{std::move(a), std::move(b)}, std::nullopt, std::nullopt,
                                        std::move(label));
    if (!trusted) {
        const Facets& f = *p->facets();
        for (std::size_t i = 0; i < n; ++i) {
            for (double sgn : {1.0, -1.0}) {
                Vector e(n, 0.0);
                e[i] = sgn;
                if (lp_solve_status(e, f.a, f.b).status != LpStatus::optimal)
                    throw InvalidBodyError("hpoly: polytope is unbounded");
            }
        }
    }
    return p;
}

std::shared_ptr<const Polytope> make_vpolytope(std::vector<Vector> vertices, std::string label, bool trusted) {
    if (vertices.empty()) throw InvalidBodyError("vpoly: empty vertex list");
    const std::size_t n = vertices.front().size();
    auto p = std::make_shared<Polytope>(n, std::nullopt, std::move(vertices), std::nullopt, std::move(label));
    if (!trusted) {
        // The origin is interior exactly when the polar {y : v_j·y <= 1} is bounded.
        const Matrix rows = Matrix::from_rows(*p->vertices());
        const Vector ones(rows.rows(), 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (double sgn : {1.0, -1.0}) {
                Vector e(n, 0.0);
                e[i] = sgn;
                if (lp_solve_status(e, rows, ones).status != LpStatus::optimal)
                    throw InvalidBodyError("vpoly: origin is not interior to the hull");
            }
        }
    }
    return p;
}

}  // namespace isoloc
