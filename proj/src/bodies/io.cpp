#include "isoloc/bodies/io.hpp"

#include <fstream>
#include <set>

#include "isoloc/bodies/affine.hpp"
#include "isoloc/bodies/ball.hpp"

namespace isoloc {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw InvalidBodyError("body literal: unknown key '" + key + "'");
}

const json& field(const json& j, const char* key) {
    if (!j.contains(key)) throw InvalidBodyError(std::string("body literal: missing key '") + key + "'");
    return j.at(key);
}

Vector to_vector(const json& j) {
    if (!j.is_array()) throw InvalidBodyError("body literal: expected an array of numbers");
    Vector v;
    for (const auto& x : j) {
        if (!x.is_number()) throw InvalidBodyError("body literal: expected a number");
        v.push_back(x.get<double>());
    }
    return v;
}

std::vector<Vector> to_rows(const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidBodyError("body literal: expected a non-empty array of rows");
    std::vector<Vector> rows;
    for (const auto& r : j) rows.push_back(to_vector(r));
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) throw InvalidBodyError("body literal: ragged rows");
    return rows;
}

json rows_to_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(Vector(m.row(i).begin(), m.row(i).end()));
    return out;
}

}  // namespace

Representation representation_from_string(const std::string& s) {
    if (s == "h") return Representation::h;
    if (s == "v") return Representation::v;
    if (s == "both") return Representation::both;
    if (s == "auto") return Representation::automatic;
    throw InvalidBodyError("unknown representation: " + s);
}

BodyPtr body_from_json(const json& j) {
    if (!j.is_object()) throw InvalidBodyError("body literal must be an object");
    const std::string type = field(j, "type").get<std::string>();
    try {
        if (type == "hpoly") {
            reject_unknown(j, {"type", "A", "b"});
            const auto rows = to_rows(field(j, "A"));
            Vector b = to_vector(field(j, "b"));
            if (b.size() != rows.size()) throw InvalidBodyError("hpoly: A and b sizes differ");
            return make_hpolytope(Matrix::from_rows(rows), std::move(b));
        }
        if (type == "vpoly") {
            reject_unknown(j, {"type", "vertices"});
            return make_vpolytope(to_rows(field(j, "vertices")));
        }
        if (type == "ball") {
            reject_unknown(j, {"type", "n", "r"});
            return ball(field(j, "n").get<std::size_t>(), j.value("r", 1.0));
        }
        if (type == "named") {
            reject_unknown(j, {"type", "name", "n", "rep"});
            const auto rep = representation_from_string(j.value("rep", std::string("auto")));
            return named_body(field(j, "name").get<std::string>(), field(j, "n").get<std::size_t>(), rep);
        }
    } catch (const json::exception& e) {
        throw InvalidBodyError(std::string("body literal: ") + e.what());
    }
    throw InvalidBodyError("body literal: unknown type '" + type + "'");
}

BodyPtr load_body(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidBodyError("cannot open body file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidBodyError("body file " + path.string() + ": " + e.what());
    }
    return body_from_json(j);
}

json body_to_json(const Body& body) {
    if (auto b = dynamic_cast<const Ball*>(&body)) return {{"type", "ball"}, {"n", b->dim()}, {"r", b->r()}};
    if (const Facets* f = body.facets()) return {{"type", "hpoly"}, {"A", rows_to_json(f->a)}, {"b", f->b}};
    if (const auto* v = body.vertices()) return {{"type", "vpoly"}, {"vertices", *v}};
    throw InvalidBodyError("body_to_json: no finite description for " + body.describe());
}

}  // namespace isoloc
