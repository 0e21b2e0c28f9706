#include "isoloc/cli/verify.hpp"

#include <cmath>

#include "isoloc/estimators/containment.hpp"
#include "isoloc/isotropic/isotropic.hpp"

namespace isoloc {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kRecheckTol = 1e-8;

BodyPtr body_from_spec(const ojson& spec) {
    const auto name = spec.at("name").get<std::string>();
    const auto n = spec.at("n").get<std::size_t>();
    return spec.value("isotropic", false) ? named_isotropic(name, n, Representation::automatic) : named_body(name, n);
}

bool close(double a, double b) { return std::abs(a - b) <= kRecheckTol * std::max(1.0, std::abs(b)); }

std::string pair_label(const ojson& cert) {
    return cert.at("body1").at("name").get<std::string>() + ":" + cert.at("body2").at("name").get<std::string>() +
           " n=" + std::to_string(cert.at("body1").at("n").get<std::size_t>());
}

VerifyCheck check_banach_mazur(const ojson& cert) {
    VerifyCheck c{"banach-mazur certificate " + pair_label(cert), false, ""};
    DistanceCertificate d;
    std::vector<Vector> rows;
    for (const auto& r : cert.at("u")) rows.push_back(r.get<Vector>());
    d.u = Matrix::from_rows(rows);
    d.bound = cert.at("bound").get<double>();
    const double again = recheck_certificate(d, *body_from_spec(cert.at("body1")), *body_from_spec(cert.at("body2")));
    c.ok = close(again, d.bound);
    c.detail = "stored " + std::to_string(d.bound) + ", recomputed " + std::to_string(again);
    return c;
}

VerifyCheck check_partial(const ojson& cert) {
    VerifyCheck c{"partial certificate " + pair_label(cert), false, ""};
    const auto again =
        dpc_upper(body_from_spec(cert.at("body1")), body_from_spec(cert.at("body2")), cert.at("beta").get<double>(),
                  cert.at("samples").get<std::size_t>(), cert.at("seed").get<std::uint64_t>());
    const double stored = cert.at("bound").get<double>();
    c.ok = close(again.bound, stored) && close(again.forward, cert.at("forward").get<double>()) &&
           close(again.backward, cert.at("backward").get<double>());
    c.detail = "stored " + std::to_string(stored) + ", recomputed " + std::to_string(again.bound);
    return c;
}

}  // namespace

bool VerifyReport::passed() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

VerifyReport verify_record(const ExperimentRecord& record) {
    VerifyReport rep;
    for (const auto& cert : record.certificates) {
        const auto kind = cert.at("kind").get<std::string>();
        try {
            if (kind == to_string(DistanceCertificate::Kind::banach_mazur))
                rep.checks.push_back(check_banach_mazur(cert));
            else if (kind == to_string(DistanceCertificate::Kind::partial))
                rep.checks.push_back(check_partial(cert));
            else
                rep.checks.push_back({"certificate", false, "unknown kind " + kind});
        } catch (const std::exception& e) {
            rep.checks.push_back({kind + " certificate", false, e.what()});
        }
    }
    const std::size_t bad = record.violations();
    rep.checks.push_back({"row property flags", bad == 0, std::to_string(bad) + " of " +
                                                               std::to_string(record.rows.size()) + " rows failed"});
    if (record.stated_violations)
        rep.checks.push_back({"summary violation count", *record.stated_violations == bad,
                              "summary states " + std::to_string(*record.stated_violations) + ", rows give " +
                                  std::to_string(bad)});
    return rep;
}

}  // namespace isoloc
