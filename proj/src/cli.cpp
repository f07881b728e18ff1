#include "congrue/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "congrue/congruence.hpp"
#include "congrue/errors.hpp"
#include "congrue/frobenius.hpp"
#include "congrue/json.hpp"
#include "congrue/local.hpp"
#include "congrue/model.hpp"
#include "congrue/scan.hpp"

namespace congrue::cli {

namespace {

struct Options {
    std::string curve_a;
    std::string curve_b;
    std::vector<std::string> curves() const
    {
        std::vector<std::string> out;
        for (const auto* c : {&curve_a, &curve_b})
            if (!c->empty())
                out.push_back(*c);
        return out;
    }
    std::string file;
    std::uint64_t p = 17;
    std::uint64_t l = 0;
    std::uint64_t bound = 0;
    bool paper_bound = false;
    bool exclude_lp = false;
    bool include_lp = false;
    std::string cache_dir;
    bool json = false;
    std::size_t probes = 25;
    std::string d;
};

class Runner {
public:
    Runner(const Options& opt, std::ostream& out) : opt_(opt), out_(out)
    {
        if (!opt_.cache_dir.empty())
            cache_.emplace(opt_.cache_dir);
    }

    int invariants()
    {
        const auto inv = model::invariants(curve(0));
        if (opt_.json)
            return emit(json::encode(inv));
        out_ << "b2: " << inv.b2 << "\nb4: " << inv.b4 << "\nb6: " << inv.b6 << "\nb8: " << inv.b8
             << "\nc4: " << inv.c4 << "\nc6: " << inv.c6 << "\ndiscriminant: " << inv.discriminant
             << "\nj: " << inv.j.get_str() << '\n';
        return Affirmative;
    }

    int minimal()
    {
        const auto mm = model::minimal_model(curve(0));
        if (opt_.json) {
            json::Json j;
            j["model"] = json::encode(mm.model);
            j["transformation"] = json::encode(mm.transform);
            return emit(j);
        }
        out_ << model::format(mm.model) << "\nu=" << mm.transform.u.get_str() << " r=" << mm.transform.r.get_str()
             << " s=" << mm.transform.s.get_str() << " t=" << mm.transform.t.get_str() << '\n';
        return Affirmative;
    }

    int localdata()
    {
        const auto prof = local::profile(minimal_curve(0));
        if (opt_.json) {
            json::Json j;
            j["conductor"] = prof.conductor.get_str();
            j["primes"] = json::Json::array();
            for (const auto& ld : prof.bad)
                j["primes"].push_back(json::encode(ld));
            return emit(j);
        }
        out_ << "conductor: " << prof.conductor << '\n';
        for (const auto& ld : prof.bad) {
            out_ << "q=" << ld.q << " kind=" << to_string(ld.kind) << " v_delta=" << ld.v_delta << " f=" << ld.f
                 << " kodaira=" << ld.kodaira.str() << " potentially_good=" << (ld.potentially_good ? "yes" : "no");
            if (ld.phi_order)
                out_ << " phi_order=" << *ld.phi_order;
            out_ << '\n';
        }
        return Affirmative;
    }

    int conductor()
    {
        const auto n = local::conductor(minimal_curve(0));
        if (opt_.json)
            return emit(json::Json{{"conductor", n.get_str()}});
        out_ << n << '\n';
        return Affirmative;
    }

    int ap()
    {
        const long a = frobenius::ap(minimal_curve(0), opt_.l);
        if (opt_.json)
            return emit(json::Json{{"l", opt_.l}, {"a", a}});
        out_ << a << '\n';
        return Affirmative;
    }

    int aptable()
    {
        const auto table = frobenius::ap_table(curve(0), opt_.bound, cache());
        if (opt_.json) {
            json::Json j;
            j["curve_key"] = table.curve_key;
            j["bound"] = table.bound;
            j["values"] = json::Json::array();
            for (const auto& [l, a] : table.values)
                j["values"].push_back(json::Json::array({l, a}));
            return emit(j);
        }
        for (const auto& [l, a] : table.values)
            out_ << l << '\t' << a << '\n';
        return Affirmative;
    }

    int congruent()
    {
        CongruenceParams params;
        params.p = opt_.p;
        if (opt_.paper_bound)
            params.bound_policy = PaperPreset{};
        else if (opt_.bound)
            params.bound_policy = ExplicitBound{opt_.bound};
        params.include_l_equals_p = !opt_.exclude_lp;
        const auto report = congruence::verify_congruence(curve(0), curve(1), params, cache());
        const int code = report.congruent() ? Affirmative
                         : report.verdict == Verdict::NotCongruent ? Negative
                                                                   : NotApplicable;
        if (opt_.json)
            return emit(json::encode(report), code);
        out_ << "verdict: " << to_string(report.verdict) << "\np: " << report.p << "\nM: " << report.M
             << "\nbound: " << report.bound << " (" << report.bound_policy << ")\nchecked: " << report.checked << '\n';
        for (const auto& s : report.skipped)
            out_ << "skipped: " << s.l << " (" << s.reason << ")\n";
        for (const auto& a : report.aux)
            out_ << "aux: q=" << a.q << " a_good=" << a.a_good << " eps=" << a.eps
                 << (a.holds ? " holds" : " fails") << '\n';
        for (const auto& w : report.witnesses)
            out_ << "witness: l=" << w.l << " a=" << w.a << " a'=" << w.a_prime << " (" << w.kind << ")\n";
        if (report.certificate)
            out_ << "certificate: q=" << report.certificate->q << " e=" << report.certificate->e << '\n';
        if (report.certificate_prime)
            out_ << "certificate': q=" << report.certificate_prime->q << " e=" << report.certificate_prime->e
                 << '\n';
        if (!report.inapplicable_reason.empty())
            out_ << "reason: " << report.inapplicable_reason << '\n';
        for (const auto& n : report.notes)
            out_ << "note: " << n << '\n';
        return code;
    }

    int nonisogenous()
    {
        const auto w = congruence::certify_non_isogenous(curve(0), curve(1), opt_.bound, cache());
        if (opt_.json)
            return emit(json::Json{{"witness", w ? json::Json(*w) : json::Json(nullptr)}}, w ? Affirmative : Negative);
        if (w)
            out_ << "non-isogenous: a_l differs at l=" << *w << '\n';
        else
            out_ << "inconclusive: no witness up to " << opt_.bound << '\n';
        return w ? Affirmative : Negative;
    }

    int irreducible()
    {
        const auto cert = local::irreducibility_certificate(curve(0), opt_.p);
        if (opt_.json)
            return emit(json::Json{{"certificate", cert ? json::encode(*cert) : json::Json(nullptr)}},
                        cert ? Affirmative : Negative);
        if (cert)
            out_ << "irreducible: q=" << cert->q << " e=" << cert->e << "\n" << cert->reason << '\n';
        else
            out_ << "inconclusive: no certificate for p=" << opt_.p << '\n';
        return cert ? Affirmative : Negative;
    }

    int twist()
    {
        const Int d(opt_.d, 10);
        const auto tw = model::quadratic_twist(curve(0), d);
        if (opt_.json)
            return emit(json::Json{{"d", d.get_str()}, {"model", json::encode(tw)}});
        out_ << model::format(tw) << '\n';
        return Affirmative;
    }

    int scan()
    {
        const auto records = scan::load_curves(opt_.file);
        ScanOptions so;
        so.probe_count = opt_.probes;
        so.cache = cache();
        if (opt_.paper_bound)
            so.bound_policy = PaperPreset{};
        else if (opt_.bound)
            so.bound_policy = ExplicitBound{opt_.bound};
        const auto result = scan::find_congruent_pairs(records, opt_.p, so);
        if (opt_.json) {
            json::Json arr = json::Json::array();
            for (const auto& pr : result.pairs)
                arr.push_back(json::encode(pr));
            return emit(arr);
        }
        for (const auto& pr : result.pairs)
            out_ << pr.label << " ~ " << pr.label_prime << " mod " << pr.p << ": " << to_string(pr.report.verdict)
                 << ", non-isogeny witness l=" << *pr.non_isogeny_witness << ", orbit " << pr.twist_orbit << '\n';
        for (const auto& [a, b] : result.possibly_isogenous)
            out_ << "excluded (possibly isogenous): " << a << ", " << b << '\n';
        return Affirmative;
    }

private:
    WeierstrassModel curve(std::size_t i) const { return model::parse(i == 0 ? opt_.curve_a : opt_.curve_b); }
    WeierstrassModel minimal_curve(std::size_t i) const { return model::minimal_model(curve(i)).model; }
    const ApCache* cache() const { return cache_ ? &*cache_ : nullptr; }

    int emit(const json::Json& j, int code = Affirmative)
    {
        out_ << j.dump(2) << '\n';
        return code;
    }

    const Options& opt_;
    std::ostream& out_;
    std::optional<ApCache> cache_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    if (const char* env = std::getenv("CONGRUE_CACHE_DIR"))
        opt.cache_dir = env;

    CLI::App app{"Mod-p congruences between rational elliptic curves", "congrue"};
    app.require_subcommand(1, 1);

    auto common = [&](CLI::App* sub) {
        sub->add_flag("--json", opt.json, "Machine-readable JSON output");
        sub->add_option("--cache-dir", opt.cache_dir, "a_l cache directory (default: $CONGRUE_CACHE_DIR)");
    };
    auto one_curve = [&](CLI::App* sub) {
        sub->add_option("curve", opt.curve_a, "Curve as [a1,a2,a3,a4,a6]")->required();
        common(sub);
    };
    auto two_curves = [&](CLI::App* sub) {
        sub->add_option("curve", opt.curve_a, "First curve as [a1,a2,a3,a4,a6]")->required();
        sub->add_option("curve_prime", opt.curve_b, "Second curve as [a1,a2,a3,a4,a6]")->required();
        common(sub);
    };
    auto bound_flags = [&](CLI::App* sub) {
        auto* b = sub->add_option("--bound", opt.bound, "Explicit bound on l");
        auto* pb = sub->add_flag("--paper-bound", opt.paper_bound, "Use the preset bound 3360");
        b->excludes(pb);
    };

    std::vector<std::pair<CLI::App*, std::function<int(Runner&)>>> commands;
    auto add = [&](const char* name, const char* help, std::function<int(Runner&)> fn) {
        auto* sub = app.add_subcommand(name, help);
        commands.emplace_back(sub, std::move(fn));
        return sub;
    };

    one_curve(add("invariants", "b-, c-invariants, discriminant and j", &Runner::invariants));
    one_curve(add("minimal", "Global minimal model and transformation", &Runner::minimal));
    one_curve(add("localdata", "Tate's algorithm at every bad prime", &Runner::localdata));
    one_curve(add("conductor", "Conductor of the curve", &Runner::conductor));
    {
        auto* sub = add("ap", "Trace of Frobenius at one prime", &Runner::ap);
        one_curve(sub);
        sub->add_option("--l", opt.l, "Prime l")->required();
    }
    {
        auto* sub = add("aptable", "Traces for all primes up to a bound", &Runner::aptable);
        one_curve(sub);
        sub->add_option("--bound", opt.bound, "Bound B")->required();
    }
    {
        auto* sub = add("congruent", "Decide whether E[p] and E'[p] are isomorphic", &Runner::congruent);
        two_curves(sub);
        sub->add_option("--p", opt.p, "Residual prime")->required();
        bound_flags(sub);
        auto* inc = sub->add_flag("--include-lp", opt.include_lp, "Check l = p (default)");
        auto* exc = sub->add_flag("--exclude-lp", opt.exclude_lp, "Skip l = p in the trace loop");
        inc->excludes(exc);
    }
    {
        auto* sub = add("nonisogenous", "Find a prime where integer traces differ", &Runner::nonisogenous);
        two_curves(sub);
        sub->add_option("--bound", opt.bound, "Bound B")->required();
    }
    {
        auto* sub = add("irreducible", "Irreducibility certificate for E[p]", &Runner::irreducible);
        one_curve(sub);
        sub->add_option("--p", opt.p, "Residual prime")->required();
    }
    {
        auto* sub = add("twist", "Quadratic twist by a squarefree d", &Runner::twist);
        one_curve(sub);
        sub->add_option("--d", opt.d, "Squarefree twisting integer")->required();
    }
    {
        auto* sub = add("scan", "Search a CSV dataset for congruent pairs", &Runner::scan);
        sub->add_option("file", opt.file, "CSV with header label,a1,a2,a3,a4,a6[,conductor]")->required();
        sub->add_option("--p", opt.p, "Residual prime")->required();
        sub->add_option("--probes", opt.probes, "Probe primes per curve");
        bound_flags(sub);
        common(sub);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Affirmative;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    }

    try {
        // Curves must parse before any computation.
        for (const auto& c : opt.curves())
            model::parse(c);
        Runner runner(opt, out);
        for (auto& [sub, fn] : commands)
            if (sub->parsed())
                return fn(runner);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    }
    return UsageError;
}

} // namespace congrue::cli
