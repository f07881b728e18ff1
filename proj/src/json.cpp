#include "congrue/json.hpp"

namespace congrue::json {

namespace {

std::string rational(const Rational& q)
{
    return q.get_str();
}

template <class T>
Json optional_of(const std::optional<T>& v)
{
    return v ? encode(*v) : Json(nullptr);
}

} // namespace

Json encode(const WeierstrassModel& m)
{
    return Json::array({m.a1.get_str(), m.a2.get_str(), m.a3.get_str(), m.a4.get_str(), m.a6.get_str()});
}

Json encode(const Invariants& inv)
{
    Json j;
    j["b2"] = inv.b2.get_str();
    j["b4"] = inv.b4.get_str();
    j["b6"] = inv.b6.get_str();
    j["b8"] = inv.b8.get_str();
    j["c4"] = inv.c4.get_str();
    j["c6"] = inv.c6.get_str();
    j["discriminant"] = inv.discriminant.get_str();
    j["j"] = rational(inv.j);
    return j;
}

Json encode(const Transformation& t)
{
    Json j;
    j["u"] = rational(t.u);
    j["r"] = rational(t.r);
    j["s"] = rational(t.s);
    j["t"] = rational(t.t);
    return j;
}

Json encode(const LocalData& ld)
{
    Json j;
    j["q"] = ld.q;
    j["v_delta"] = ld.v_delta;
    j["v_c4"] = ld.v_c4;
    j["kind"] = to_string(ld.kind);
    j["f"] = ld.f;
    j["kodaira"] = ld.kodaira.str();
    j["potentially_good"] = ld.potentially_good;
    j["phi_order"] = ld.phi_order ? Json(*ld.phi_order) : Json(nullptr);
    return j;
}

Json encode(const IrreducibilityCertificate& cert)
{
    Json j;
    j["q"] = cert.q;
    j["e"] = cert.e;
    j["p"] = cert.p;
    j["reason"] = cert.reason;
    return j;
}

Json encode(const CongruenceReport& report)
{
    Json j;
    j["verdict"] = to_string(report.verdict);
    j["p"] = report.p;
    j["M"] = report.M.get_str();
    j["bound"] = report.bound;
    j["bound_policy"] = report.bound_policy;
    j["sturm_index"] = report.sturm_index.get_str();
    j["checked"] = report.checked;
    Json skipped = Json::array();
    for (const auto& s : report.skipped)
        skipped.push_back({{"l", s.l}, {"reason", s.reason}});
    j["skipped"] = skipped;
    Json aux = Json::array();
    for (const auto& a : report.aux)
        aux.push_back({{"q", a.q}, {"a_good", a.a_good}, {"eps", a.eps}, {"holds", a.holds}});
    j["aux"] = aux;
    Json witnesses = Json::array();
    for (const auto& w : report.witnesses)
        witnesses.push_back({{"l", w.l}, {"a", w.a}, {"a_prime", w.a_prime}, {"kind", w.kind}});
    j["witnesses"] = witnesses;
    j["certificates"] = Json::array({optional_of(report.certificate), optional_of(report.certificate_prime)});
    if (!report.inapplicable_reason.empty())
        j["inapplicable_reason"] = report.inapplicable_reason;
    j["notes"] = report.notes;
    return j;
}

Json encode(const PairReport& pair)
{
    Json j;
    j["labels"] = Json::array({pair.label, pair.label_prime});
    j["p"] = pair.p;
    j["non_isogeny_witness"] = pair.non_isogeny_witness ? Json(*pair.non_isogeny_witness) : Json(nullptr);
    j["twist_orbit"] = pair.twist_orbit;
    j["report"] = encode(pair.report);
    return j;
}

Json encode(const TwistOrbit& orbit)
{
    Json j;
    j["representative"] = orbit.representative;
    j["members"] = orbit.members;
    return j;
}

} // namespace congrue::json
