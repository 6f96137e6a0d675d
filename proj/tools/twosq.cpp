#include <twosq/twosq.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <string>

namespace {

using twosq::Int;
using json = nlohmann::json;

// JSON number when it fits in 64 bits, decimal string otherwise.
json json_int(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();
}

void emit(const json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }

json local_json(const twosq::LocalTable& table) {
    json arr = json::array();
    for (const twosq::LocalVerdict& v : table.verdicts) {
        json entry;
        entry["place"] = v.place.render();
        entry["solvable"] = v.solvable;
        entry["reason"] = twosq::render(v.reason, v.modulus_exponent);
        entry["valuation"] = v.valuation ? json(*v.valuation) : json(nullptr);
        arr.push_back(entry);
    }
    return arr;
}

json criterion_json(const twosq::NormFactorization& nf, const twosq::Rational& sum, bool accept) {
    json c;
    c["s1"] = nf.s1;
    c["s2"] = nf.s2;
    c["classes"] = json::array();
    for (const twosq::NormEntry& e : nf.odd_primes)
        c["classes"].push_back({{"p", json_int(e.p)}, {"e", e.e}, {"class", twosq::render(e.cls)}});
    c["sum"] = sum.str();
    c["accept"] = accept;
    return c;
}

json witness_json(const std::optional<std::pair<twosq::QuadInt, twosq::QuadInt>>& w) {
    if (!w) return nullptr;
    return json::array({twosq::render(w->first), twosq::render(w->second)});
}

std::map<Int, twosq::CriterionDescriptor> merged_descriptors(const std::string& path) {
    auto descs = twosq::builtin_descriptors();
    if (!path.empty())
        for (auto& [d, desc] : twosq::load_descriptor_file(path)) descs[d] = std::move(desc);
    return descs;
}

struct Args {
    std::string d, alpha, p, D, N;
    long bound = 200;
    std::string descriptors;
    std::string suite;
    bool pretty = false;
};

int run(int argc, char** argv) {
    CLI::App app{"decides whether a quadratic integer is a sum of two integral squares"};
    app.require_subcommand(1);
    Args args;
    int code = 0;

    auto add_field = [&](CLI::App* sub) { sub->add_option("--d", args.d, "field: Q(sqrt(d))")->required(); };
    auto add_alpha = [&](CLI::App* sub) {
        sub->add_option("--alpha", args.alpha, "element, e.g. \"(3+1*sqrt(17))/2\" or \"5\"")->required();
    };
    auto add_pretty = [&](CLI::App* sub) { sub->add_flag("--pretty", args.pretty, "indent the JSON output"); };

    CLI::App* c_decide = app.add_subcommand("decide", "full decision: local table, criterion, witness");
    add_field(c_decide);
    add_alpha(c_decide);
    c_decide->add_option("--bound", args.bound, "witness search box half-width");
    c_decide->add_option("--descriptors", args.descriptors, "extra criterion descriptor file (JSON)");
    add_pretty(c_decide);
    c_decide->callback([&] {
        twosq::FieldDesc F = twosq::make_field(Int(args.d));
        twosq::QuadInt alpha = twosq::parse_alpha(args.alpha, F);
        twosq::Verdict v = twosq::decide(alpha, {args.bound}, merged_descriptors(args.descriptors));
        json j;
        j["field"] = json_int(F.d);
        j["alpha"] = twosq::render(alpha);
        j["status"] = twosq::render(v.status);
        j["mode"] = twosq::render(v.mode);
        j["local"] = local_json(v.local);
        j["witness"] = witness_json(v.witness);
        j["criterion"] = v.criterion
                             ? criterion_json(v.criterion->factorization, v.criterion->sum, v.criterion->accept)
                             : json(nullptr);
        emit(j, args.pretty);
        code = v.status == twosq::Status::solvable ? 0 : v.status == twosq::Status::unsolvable ? 1 : 2;
    });

    CLI::App* c_local = app.add_subcommand("local", "local solvability table only");
    add_field(c_local);
    add_alpha(c_local);
    add_pretty(c_local);
    c_local->callback([&] {
        twosq::FieldDesc F = twosq::make_field(Int(args.d));
        twosq::QuadInt alpha = twosq::parse_alpha(args.alpha, F);
        twosq::LocalTable table = twosq::local_table(alpha);
        json j;
        j["field"] = json_int(F.d);
        j["alpha"] = twosq::render(alpha);
        j["local"] = local_json(table);
        j["all_pass"] = table.all_pass;
        emit(j, args.pretty);
        code = table.all_pass ? 0 : 1;
    });

    CLI::App* c_pell = app.add_subcommand("pell", "minimal solution of x^2 - D y^2 = N, N in {1,-1,2,-2}");
    c_pell->add_option("--D", args.D, "positive nonsquare coefficient")->required();
    c_pell->add_option("--N", args.N, "right-hand side: 1, -1, 2 or -2")->required();
    add_pretty(c_pell);
    c_pell->callback([&] {
        Int D(args.D);
        Int Nv(args.N);
        if (Nv < -2 || Nv > 2 || Nv == 0) throw twosq::DomainError("pell: N must be +-1 or +-2");
        auto sol = twosq::solve_pm(D, Nv.convert_to<int>());
        json j;
        if (sol) {
            j["D"] = json_int(D);
            j["N"] = sol->N;
            j["x"] = sol->x0.str();
            j["y"] = sol->y0.str();
            code = 0;
        } else {
            j["solvable"] = false;
            code = 1;
        }
        emit(j, args.pretty);
    });

    CLI::App* c_unit = app.add_subcommand("unit", "fundamental unit of the real field Q(sqrt(d))");
    add_field(c_unit);
    add_pretty(c_unit);
    c_unit->callback([&] {
        twosq::FieldDesc F = twosq::make_field(Int(args.d));
        twosq::QuadInt eps = twosq::fundamental_unit(F);
        json j;
        j["field"] = json_int(F.d);
        j["epsilon"] = twosq::render(eps);
        j["norm"] = json_int(twosq::norm(eps));
        emit(j, args.pretty);
    });

    CLI::App* c_minus = app.add_subcommand("minus-one", "is -1 a sum of two squares in Q(sqrt(-p))?");
    c_minus->add_option("--p", args.p, "prime p")->required();
    add_pretty(c_minus);
    c_minus->callback([&] {
        Int p(args.p);
        twosq::MinusOneResult r = twosq::minus_one_witness(p);
        json j;
        j["p"] = json_int(p);
        if (r.witness) {
            j["witness"] = witness_json(r.witness);
            code = 0;
        } else {
            j["obstruction"] = json::array();
            for (const twosq::Place& pl : r.obstruction_places) j["obstruction"].push_back(pl.render());
            code = 1;
        }
        emit(j, args.pretty);
    });

    CLI::App* c_eps = app.add_subcommand("epsilon-obstruction",
                                         "place at which the fundamental unit of Q(sqrt(p)) fails");
    c_eps->add_option("--p", args.p, "prime p")->required();
    add_pretty(c_eps);
    c_eps->callback([&] {
        Int p(args.p);
        twosq::EpsilonObstruction eo = twosq::epsilon_obstruction(p);
        json j;
        j["p"] = json_int(p);
        j["epsilon"] = twosq::render(eo.epsilon);
        j["failing_place"] = eo.failing_place.render();
        if (eo.auxiliary) {
            j["auxiliary"] = {{"epsilon1", twosq::render(eo.auxiliary->epsilon1)},
                              {"A", eo.auxiliary->A.str()},
                              {"B", eo.auxiliary->B.str()}};
        } else {
            j["auxiliary"] = nullptr;
        }
        emit(j, args.pretty);
    });

    CLI::App* c_witness = app.add_subcommand("witness", "bounded search for x^2 + y^2 = alpha");
    add_field(c_witness);
    add_alpha(c_witness);
    c_witness->add_option("--bound", args.bound, "search box half-width");
    add_pretty(c_witness);
    c_witness->callback([&] {
        twosq::FieldDesc F = twosq::make_field(Int(args.d));
        twosq::QuadInt alpha = twosq::parse_alpha(args.alpha, F);
        auto w = twosq::find_witness(alpha, {args.bound});
        json j;
        j["field"] = json_int(F.d);
        j["alpha"] = twosq::render(alpha);
        j["witness"] = witness_json(w);
        emit(j, args.pretty);
        code = w ? 0 : 2;  // absence within the box proves nothing
    });

    CLI::App* c_crit = app.add_subcommand("criterion", "norm-factorization criterion trace");
    add_field(c_crit);
    add_alpha(c_crit);
    c_crit->add_option("--descriptors", args.descriptors, "extra criterion descriptor file (JSON)");
    add_pretty(c_crit);
    c_crit->callback([&] {
        twosq::FieldDesc F = twosq::make_field(Int(args.d));
        twosq::QuadInt alpha = twosq::parse_alpha(args.alpha, F);
        auto descs = merged_descriptors(args.descriptors);
        auto it = descs.find(F.d);
        if (it == descs.end()) throw twosq::DomainError("criterion: no descriptor for d = " + F.d.str());
        twosq::NormFactorization nf = twosq::factor_norm(alpha, it->second);
        twosq::Rational sum = twosq::weighted_sum(it->second, nf);
        bool accept = twosq::criterion_accepts(it->second, sum);
        twosq::CriterionOutcome outcome = twosq::evaluate(it->second, alpha, twosq::local_table(alpha));
        json j;
        j["field"] = json_int(F.d);
        j["alpha"] = twosq::render(alpha);
        j["criterion"] = criterion_json(nf, sum, accept);
        j["outcome"] = outcome == twosq::CriterionOutcome::solvable ? "solvable" : "unsolvable";
        emit(j, args.pretty);
        code = outcome == twosq::CriterionOutcome::solvable ? 0 : 1;
    });

    CLI::App* c_self = app.add_subcommand("selftest", "run the acceptance battery");
    c_self->add_option("--suite", args.suite, "run only suites whose name contains this substring");
    add_pretty(c_self);
    c_self->callback([&] {
        auto results = twosq::run_acceptance(args.suite);
        json j;
        j["suites"] = json::array();
        bool all = true;
        for (const twosq::SuiteResult& r : results) {
            j["suites"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            all = all && r.pass;
        }
        emit(j, args.pretty);
        code = all ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << json{{"error", e.what()}}.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cout << json{{"error", e.what()}}.dump() << "\n";
        return 3;
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
