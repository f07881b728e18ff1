#include "congrue/congruence.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "congrue/frobenius.hpp"

namespace congrue {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::IsomorphicModules: return "IsomorphicModules";
    case Verdict::CongruentSemisimplifications: return "CongruentSemisimplifications";
    case Verdict::NotCongruent: return "NotCongruent";
    case Verdict::Inapplicable: return "Inapplicable";
    }
    return "?";
}

namespace congruence {

namespace {

long mod_p(long a, std::uint64_t p)
{
    const long m = static_cast<long>(p);
    return ((a % m) + m) % m;
}

std::string role_reason(PrimeRole role)
{
    switch (role) {
    case PrimeRole::CommonMultiplicativeSameType: return "common multiplicative reduction of the same type";
    case PrimeRole::CommonAdditive: return "additive reduction on both curves";
    case PrimeRole::OneSidedMultiplicative: return "one-sided multiplicative reduction (auxiliary condition)";
    }
    return "?";
}

std::string side_name(const LocalData* ld)
{
    return ld ? to_string(ld->kind) : "Good";
}

// a_l in ascending l, filled in doubling windows so an early mismatch
// does not pay for the whole table.
class TraceStream {
public:
    TraceStream(const WeierstrassModel& minimal, std::uint64_t bound, const ApCache* cache)
        : m_(minimal), bound_(bound), cache_(cache) {}

    long at(std::uint64_t l)
    {
        if (l > bound_)
            return frobenius::ap(m_, l);
        while (l > filled_) {
            const std::uint64_t next = std::min(bound_, std::max<std::uint64_t>(1024, 2 * filled_));
            if (cache_) {
                values_ = frobenius::ap_table(m_, next, cache_).values;
            } else {
                for (const auto q : arith::primes_upto(next))
                    if (q > filled_)
                        values_.emplace(q, frobenius::ap(m_, q));
            }
            filled_ = next;
        }
        return values_.at(l);
    }

private:
    WeierstrassModel m_;
    std::uint64_t bound_;
    const ApCache* cache_;
    std::uint64_t filled_ = 1;
    std::map<std::uint64_t, long> values_;
};

} // namespace

Level congruence_level(const LocalProfile& e, const LocalProfile& e_prime)
{
    Level level;
    level.M = lcm(e.conductor, e_prime.conductor);
    std::set<std::uint64_t> primes;
    for (const auto& ld : e.bad)
        primes.insert(ld.q);
    for (const auto& ld : e_prime.bad)
        primes.insert(ld.q);

    for (const auto q : primes) {
        const LocalData* a = e.at(q);
        const LocalData* b = e_prime.at(q);
        const bool a_mult = a && a->is_multiplicative();
        const bool b_mult = b && b->is_multiplicative();
        const bool a_add = a && a->kind == ReductionKind::Additive;
        const bool b_add = b && b->kind == ReductionKind::Additive;
        if (a_mult && b_mult && a->kind == b->kind) {
            level.roles[q] = PrimeRole::CommonMultiplicativeSameType;
        } else if (a_add && b_add) {
            level.roles[q] = PrimeRole::CommonAdditive;
        } else if ((a_mult && !b) || (b_mult && !a)) {
            level.roles[q] = PrimeRole::OneSidedMultiplicative;
        } else if (!level.inapplicable_prime) {
            level.inapplicable_prime = q;
            level.inapplicable_reason = "unsupported reduction pair at " + std::to_string(q) + ": " +
                                        side_name(a) + " vs " + side_name(b);
        }
    }
    return level;
}

Int sturm_index(const Int& M)
{
    if (M < 1)
        throw std::invalid_argument("sturm_index: level must be positive");
    Int psi = M;
    for (const auto& q : arith::prime_divisors(M)) {
        psi /= q;
        psi *= q + 1;
    }
    return psi;
}

std::uint64_t sturm_bound(const Int& M)
{
    Int bound;
    mpz_cdiv_q_ui(bound.get_mpz_t(), sturm_index(M).get_mpz_t(), 6);
    return arith::to_u64(bound);
}

std::uint64_t resolve_bound(const BoundPolicy& policy, const Int& M)
{
    if (std::holds_alternative<ComputedSturm>(policy))
        return sturm_bound(M);
    const std::uint64_t value = std::holds_alternative<PaperPreset>(policy) ? std::get<PaperPreset>(policy).value
                                                                            : std::get<ExplicitBound>(policy).value;
    if (value < 2)
        throw std::invalid_argument("explicit bound must be at least 2");
    return value;
}

std::string describe(const BoundPolicy& policy)
{
    if (std::holds_alternative<ComputedSturm>(policy))
        return "ComputedSturm";
    if (std::holds_alternative<PaperPreset>(policy))
        return "PaperPreset(" + std::to_string(std::get<PaperPreset>(policy).value) + ")";
    return "Explicit(" + std::to_string(std::get<ExplicitBound>(policy).value) + ")";
}

bool aux_condition(long a_q_good, long eps, std::uint64_t q, std::uint64_t p)
{
    const long lhs = mod_p(a_q_good * eps, p);
    const long target = mod_p(static_cast<long>(q) + 1, p);
    return lhs == target || lhs == mod_p(-(static_cast<long>(q) + 1), p);
}

CongruenceReport verify_congruence(const WeierstrassModel& e, const WeierstrassModel& e_prime,
                                   const CongruenceParams& params, const ApCache* cache)
{
    if (params.p < 3 || !arith::is_prime(params.p))
        throw std::invalid_argument("verify_congruence: p must be a prime >= 3");

    const auto min_e = model::minimal_model(e).model;
    const auto min_e_prime = model::minimal_model(e_prime).model;
    const auto prof_e = local::profile(min_e);
    const auto prof_e_prime = local::profile(min_e_prime);
    const auto level = congruence_level(prof_e, prof_e_prime);

    CongruenceReport report;
    report.p = params.p;
    report.M = level.M;
    report.sturm_index = sturm_index(level.M);
    report.bound_policy = describe(params.bound_policy);
    report.bound = resolve_bound(params.bound_policy, level.M);
    const auto computed = sturm_bound(level.M);
    if (report.bound != computed) {
        report.notes.push_back("bound " + std::to_string(report.bound) + " differs from the computed Sturm bound " +
                               std::to_string(computed) + " = ceil(" + report.sturm_index.get_str() + "/6)");
    }
    TraceStream trace_e(min_e, report.bound, cache);
    TraceStream trace_e_prime(min_e_prime, report.bound, cache);
    const auto in_range = arith::primes_upto(report.bound);

    if (level.inapplicable_prime) {
        // Only refutation is possible here: a trace mismatch at a common good prime l != p.
        for (const auto l : in_range) {
            if (l == params.p || prof_e.at(l) || prof_e_prime.at(l))
                continue;
            const long a = trace_e.at(l);
            const long a_prime = trace_e_prime.at(l);
            ++report.checked;
            if (mod_p(a - a_prime, params.p) != 0) {
                report.witnesses.push_back({l, a, a_prime, "trace"});
                report.verdict = Verdict::NotCongruent;
                report.notes.push_back(level.inapplicable_reason + "; refuted at a common good prime");
                return report;
            }
        }
        report.verdict = Verdict::Inapplicable;
        report.inapplicable_reason = level.inapplicable_reason;
        return report;
    }

    std::set<std::uint64_t> primes(in_range.begin(), in_range.end());
    for (const auto& [q, role] : level.roles)
        if (role == PrimeRole::OneSidedMultiplicative)
            primes.insert(q);

    for (const auto l : primes) {
        const long a = trace_e.at(l);
        const long a_prime = trace_e_prime.at(l);
        if (const auto it = level.roles.find(l); it != level.roles.end()) {
            if (it->second != PrimeRole::OneSidedMultiplicative) {
                report.skipped.push_back({l, role_reason(it->second)});
                continue;
            }
            const bool e_is_good = prof_e.at(l) == nullptr;
            AuxResult aux{l, e_is_good ? a : a_prime, e_is_good ? a_prime : a, false};
            aux.holds = aux_condition(aux.a_good, aux.eps, l, params.p);
            report.aux.push_back(aux);
            if (!aux.holds) {
                report.witnesses.push_back({l, a, a_prime, "aux"});
                report.verdict = Verdict::NotCongruent;
                return report;
            }
            continue;
        }
        if (l == params.p && !params.include_l_equals_p) {
            report.skipped.push_back({l, "l = p excluded by policy"});
            continue;
        }
        ++report.checked;
        if (mod_p(a - a_prime, params.p) != 0) {
            report.witnesses.push_back({l, a, a_prime, "trace"});
            report.verdict = Verdict::NotCongruent;
            return report;
        }
    }

    report.verdict = Verdict::CongruentSemisimplifications;
    if (params.p >= 5) {
        report.certificate = local::irreducibility_certificate(min_e, params.p);
        report.certificate_prime = local::irreducibility_certificate(min_e_prime, params.p);
        if (report.certificate && report.certificate_prime)
            report.verdict = Verdict::IsomorphicModules;
    } else {
        report.notes.push_back("no irreducibility certificate for p < 5");
    }
    return report;
}

std::optional<std::uint64_t> certify_non_isogenous(const WeierstrassModel& e, const WeierstrassModel& e_prime,
                                                   std::uint64_t bound, const ApCache* cache)
{
    if (bound < 2)
        throw std::invalid_argument("certify_non_isogenous: bound must be at least 2");
    const auto min_e = model::minimal_model(e).model;
    const auto min_e_prime = model::minimal_model(e_prime).model;
    const Int disc = model::discriminant(min_e) * model::discriminant(min_e_prime);
    TraceStream trace_e(min_e, bound, cache);
    TraceStream trace_e_prime(min_e_prime, bound, cache);
    for (const auto l : arith::primes_upto(bound)) {
        if (arith::mod(disc, l) == 0)
            continue;
        if (trace_e.at(l) != trace_e_prime.at(l))
            return l;
    }
    return std::nullopt;
}

} // namespace congruence
} // namespace congrue
