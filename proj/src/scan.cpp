#include "congrue/scan.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "congrue/digest.hpp"
#include "congrue/errors.hpp"
#include "congrue/frobenius.hpp"
#include "congrue/local.hpp"

namespace congrue::scan {

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

Int parse_int(const std::string& field, const std::string& column, std::size_t line)
{
    const std::string t = trim(field);
    const std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (t.size() == start || !std::all_of(t.begin() + static_cast<long>(start), t.end(),
                                          [](unsigned char c) { return std::isdigit(c); }))
        throw DatasetError("column " + column + ": '" + field + "' is not a decimal integer", line);
    return Int(t[0] == '+' ? t.substr(1) : t, 10);
}

std::string digest_of(const std::map<std::uint64_t, long>& residues)
{
    std::string text;
    for (const auto& [l, r] : residues)
        text += std::to_string(l) + ":" + std::to_string(r) + ";";
    return sha256_hex(text);
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t i)
    {
        while (parent_[i] != i)
            i = parent_[i] = parent_[parent_[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

} // namespace

CurveRecord make_record(std::string label, const WeierstrassModel& m)
{
    return {std::move(label), m, local::conductor(model::minimal_model(m).model)};
}

std::vector<CurveRecord> parse_curves(std::istream& in)
{
    std::vector<CurveRecord> records;
    std::string line;
    std::size_t lineno = 0;
    bool has_conductor = false;
    bool header_seen = false;
    std::set<std::string> labels;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0)
            line.erase(0, 3);
        if (trim(line).empty())
            continue;
        auto fields = split_csv(line);
        for (auto& f : fields)
            f = trim(f);
        if (!header_seen) {
            const std::vector<std::string> base{"label", "a1", "a2", "a3", "a4", "a6"};
            auto with_conductor = base;
            with_conductor.push_back("conductor");
            if (fields == with_conductor)
                has_conductor = true;
            else if (fields != base)
                throw DatasetError("expected header 'label,a1,a2,a3,a4,a6[,conductor]'", lineno);
            header_seen = true;
            continue;
        }
        const std::size_t expected = has_conductor ? 7 : 6;
        if (fields.size() != expected)
            throw DatasetError("expected " + std::to_string(expected) + " fields, found " +
                                   std::to_string(fields.size()),
                               lineno);
        if (fields[0].empty())
            throw DatasetError("empty label", lineno);
        if (!labels.insert(fields[0]).second)
            throw DatasetError("duplicate label '" + fields[0] + "'", lineno);

        static const char* names[] = {"a1", "a2", "a3", "a4", "a6"};
        WeierstrassModel m{parse_int(fields[1], names[0], lineno), parse_int(fields[2], names[1], lineno),
                           parse_int(fields[3], names[2], lineno), parse_int(fields[4], names[3], lineno),
                           parse_int(fields[5], names[4], lineno)};
        if (model::discriminant(m) == 0)
            throw DatasetError("curve '" + fields[0] + "' is singular (discriminant zero)", lineno);
        CurveRecord rec = make_record(fields[0], m);
        if (has_conductor && !fields[6].empty()) {
            const Int stated = parse_int(fields[6], "conductor", lineno);
            if (stated != rec.conductor)
                throw DatasetError("conductor mismatch for '" + rec.label + "': file says " + stated.get_str() +
                                       ", computed " + rec.conductor.get_str(),
                                   lineno);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<CurveRecord> load_curves(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw DatasetError("cannot open " + path.string(), 0);
    return parse_curves(in);
}

PrimeList good_probes(const CurveRecord& rec, std::size_t count, std::uint64_t skip)
{
    const Int disc = model::discriminant(model::minimal_model(rec.model).model);
    PrimeList probes;
    for (std::uint64_t bound = 128; probes.size() < count; bound *= 2) {
        probes.clear();
        for (const auto l : arith::primes_upto(bound)) {
            if (l == skip || arith::mod(disc, l) == 0)
                continue;
            probes.push_back(l);
            if (probes.size() == count)
                break;
        }
    }
    return probes;
}

Fingerprint fingerprint(const CurveRecord& rec, std::uint64_t p, const PrimeList& probes)
{
    const auto minimal = model::minimal_model(rec.model).model;
    const Int disc = model::discriminant(minimal);
    Fingerprint fp;
    for (const auto l : probes) {
        if (arith::mod(disc, l) == 0)
            throw std::invalid_argument("fingerprint: probe " + std::to_string(l) + " is a bad prime of " +
                                        rec.label);
        const long a = frobenius::ap(minimal, l);
        const long m = static_cast<long>(p);
        fp.residues[l] = ((a % m) + m) % m;
    }
    fp.digest = digest_of(fp.residues);
    return fp;
}

std::vector<TwistOrbit> twist_orbits(const std::vector<CurveRecord>& records)
{
    UnionFind uf(records.size());
    std::vector<Rational> j;
    j.reserve(records.size());
    for (const auto& r : records)
        j.push_back(model::invariants(r.model).j);
    for (std::size_t a = 0; a < records.size(); ++a)
        for (std::size_t b = a + 1; b < records.size(); ++b)
            if (j[a] == j[b] && uf.find(a) != uf.find(b) &&
                model::is_quadratic_twist(records[a].model, records[b].model).d)
                uf.unite(a, b);

    std::map<std::size_t, std::vector<std::string>> classes;
    for (std::size_t i = 0; i < records.size(); ++i)
        classes[uf.find(i)].push_back(records[i].label);
    std::vector<TwistOrbit> out;
    for (auto& [root, members] : classes) {
        std::sort(members.begin(), members.end());
        out.push_back({members.front(), std::move(members)});
    }
    std::sort(out.begin(), out.end(),
              [](const TwistOrbit& x, const TwistOrbit& y) { return x.representative < y.representative; });
    return out;
}

ScanResult find_congruent_pairs(const std::vector<CurveRecord>& records, std::uint64_t p, const ScanOptions& options)
{
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return records[a].label < records[b].label; });

    // a_l mod p on each curve's own probe set; pairs compare over the intersection.
    std::vector<Fingerprint> own(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        own[i] = fingerprint(records[i], p, good_probes(records[i], options.probe_count, p));

    std::map<std::string, std::string> orbit_of;
    for (const auto& orbit : twist_orbits(records))
        for (const auto& label : orbit.members)
            orbit_of[label] = orbit.representative;

    ScanResult result;
    CongruenceParams params;
    params.p = p;
    params.bound_policy = options.bound_policy;
    for (std::size_t ia = 0; ia < order.size(); ++ia) {
        for (std::size_t ib = ia + 1; ib < order.size(); ++ib) {
            const auto& a = records[order[ia]];
            const auto& b = records[order[ib]];
            std::map<std::uint64_t, long> ra, rb;
            for (const auto& [l, r] : own[order[ia]].residues) {
                if (auto it = own[order[ib]].residues.find(l); it != own[order[ib]].residues.end()) {
                    ra[l] = r;
                    rb[l] = it->second;
                }
            }
            if (digest_of(ra) != digest_of(rb))
                continue;

            const auto witness = congruence::certify_non_isogenous(a.model, b.model, options.witness_bound, options.cache);
            if (!witness) {
                result.possibly_isogenous.emplace_back(a.label, b.label);
                continue;
            }
            auto report = congruence::verify_congruence(a.model, b.model, params, options.cache);
            if (!report.congruent())
                continue;
            PairReport pr;
            pr.label = a.label;
            pr.label_prime = b.label;
            pr.p = p;
            pr.report = std::move(report);
            pr.non_isogeny_witness = witness;
            const auto& oa = orbit_of[a.label];
            const auto& ob = orbit_of[b.label];
            pr.twist_orbit = std::min(oa, ob) + "|" + std::max(oa, ob);
            result.pairs.push_back(std::move(pr));
        }
    }
    return result;
}

} // namespace congrue::scan
