// weylkit command line: exact Weyl-algebra arithmetic, Newton polygon
// reports, Schur/normal-form computations, and the verification suite.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "weylkit/decompose.hpp"
#include "weylkit/io.hpp"
#include "weylkit/normalform.hpp"
#include "weylkit/odelemma.hpp"
#include "weylkit/recursion.hpp"
#include "weylkit/verify.hpp"

using namespace weylkit;

namespace {

size_t default_precision()
{
    if (const char* env = std::getenv("WEYLKIT_PRECISION")) {
        long v = std::atol(env);
        if (v >= 2)
            return static_cast<size_t>(v);
    }
    return 16;
}

std::vector<Weight> parse_weights(const std::string& spec)
{
    std::vector<Weight> ws;
    size_t pos = 0;
    while (pos < spec.size()) {
        size_t semi = spec.find(';', pos);
        std::string item = spec.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        size_t comma = item.find(',');
        if (comma == std::string::npos)
            throw ParseError("weight item needs 'sigma,rho': " + item);
        ws.push_back(Weight{parse_rat(item.substr(0, comma)), parse_rat(item.substr(comma + 1))});
        if (semi == std::string::npos)
            break;
        pos = semi + 1;
    }
    if (ws.empty())
        ws.push_back(Weight{Rat(0), Rat(1)});
    return ws;
}

// Univariate polynomial in x from the operator grammar.
UPoly<Rat> parse_xpoly(const std::string& s)
{
    WeylOp<Rat> p = parse_weyl(s);
    UPoly<Rat> out;
    for (const auto& [k, c] : p.terms()) {
        if (k.second != 0)
            throw ParseError("expected a polynomial in x only");
        if (static_cast<size_t>(k.first) >= out.size())
            out.resize(static_cast<size_t>(k.first) + 1, Rat(0));
        out[static_cast<size_t>(k.first)] = c;
    }
    return out;
}

std::string print_xpoly(const UPoly<Rat>& h)
{
    WeylOp<Rat> p;
    for (size_t i = 0; i < h.size(); ++i)
        p.add_term(static_cast<long>(i), 0, h[i]);
    return print_weyl(p);
}

std::string print_tame_word(const std::vector<TameGen>& word)
{
    std::ostringstream os;
    bool first = true;
    for (const TameGen& g : word) {
        if (!first)
            os << " . ";
        first = false;
        switch (g.kind) {
        case TameGen::Kind::Phi:
            os << "Phi_{" << g.n << "," << print_rat(g.lambda) << "}";
            break;
        case TameGen::Kind::PhiPrime:
            os << "Phi'_{" << g.n << "," << print_rat(g.lambda) << "}";
            break;
        case TameGen::Kind::Linear:
            os << "Lin_{" << print_rat(g.a) << "," << print_rat(g.b) << "," << print_rat(g.c)
               << "," << print_rat(g.d) << "}";
            break;
        }
    }
    if (first)
        os << "(identity)";
    return os.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"weylkit: exact computations in the first Weyl algebra and its completion"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit JSON instead of text");

    // ---- op ----
    auto* op = app.add_subcommand("op", "operator arithmetic");
    op->require_subcommand(1);
    std::string op_p, op_q;
    long op_m = 0;
    auto* op_eval = op->add_subcommand("eval", "apply an operator to the monomial x^m");
    op_eval->add_option("-P", op_p, "operator")->required();
    op_eval->add_option("-m", op_m, "monomial exponent")->required();
    auto* op_mul = op->add_subcommand("mul", "product of two operators");
    op_mul->add_option("-P", op_p)->required();
    op_mul->add_option("-Q", op_q)->required();
    auto* op_comm = op->add_subcommand("comm", "commutator [P, Q]");
    op_comm->add_option("-P", op_p)->required();
    op_comm->add_option("-Q", op_q)->required();

    // ---- newton ----
    auto* newton = app.add_subcommand("newton", "Newton polygon analysis");
    auto* report = newton->add_subcommand("report", "polygon report for an operator");
    std::string nw_p, nw_weights = "1,0;0,1;1,1";
    report->add_option("-P", nw_p)->required();
    report->add_option("--weights", nw_weights, "semicolon-separated sigma,rho pairs");

    // ---- schur ----
    auto* schur_cmd = app.add_subcommand("schur", "Schur operators");
    auto* schur_compute = schur_cmd->add_subcommand("compute", "Schur data of a normalized operator");
    std::string sc_p;
    long sc_depth = 8;
    long sc_prec = 0;
    schur_compute->add_option("-P", sc_p, "operator (weyl grammar)")->required();
    schur_compute->add_option("--depth", sc_depth);
    schur_compute->add_option("--precision", sc_prec, "series precision (default env/16)");

    // ---- normal-form ----
    auto* nf = app.add_subcommand("normal-form", "normal form of Q with respect to P");
    std::string nf_p, nf_q;
    long nf_depth = 8, nf_prec = 0;
    nf->add_option("-P", nf_p)->required();
    nf->add_option("-Q", nf_q)->required();
    nf->add_option("--depth", nf_depth);
    nf->add_option("--precision", nf_prec);

    // ---- qp-tail ----
    auto* qp = app.add_subcommand("qp-tail", "closed-form order -p tail");
    long qp_p = 2;
    qp->add_option("-p", qp_p, "order p >= 2")->required();

    // ---- ode ----
    auto* ode = app.add_subcommand("ode", "polynomial ODE lemma");
    auto* ode_solve = ode->add_subcommand("solve", "solve c g^A = H' g - ((z+1)/d) H g'");
    std::string ode_g, ode_c = "1";
    long ode_a = 1, ode_d = 1;
    ode_solve->add_option("--g", ode_g, "polynomial in x")->required();
    ode_solve->add_option("--A", ode_a)->required();
    ode_solve->add_option("--d", ode_d)->required();
    ode_solve->add_option("--c", ode_c);

    // ---- recurse ----
    auto* rec = app.add_subcommand("recurse", "order-reduction recursion");
    std::string rc_p, rc_q;
    unsigned rc_steps = 64;
    rec->add_option("-P", rc_p)->required();
    rec->add_option("-Q", rc_q)->required();
    rec->add_option("--max-steps", rc_steps);

    // ---- decompose ----
    auto* dec = app.add_subcommand("decompose", "decompose an automorphism image pair");
    std::string dc_p, dc_q;
    dec->add_option("-P", dc_p, "image of x")->required();
    dec->add_option("-Q", dc_q, "image of d")->required();

    // ---- verify ----
    auto* ver = app.add_subcommand("verify", "run the lemma verification suite");
    VerifyOptions vopt;
    ver->add_option("--seed", vopt.seed);
    ver->add_option("--scale", vopt.scale_down, "divide instance counts for a quick run");
    ver->add_flag("--inject-fault", vopt.inject_fault, "corrupt one rewrite rule (self-test)");
    bool sequential = false;
    ver->add_flag("--sequential", sequential);

    CLI11_PARSE(app, argc, argv);

    try {
        if (op_eval->parsed()) {
            WeylOp<Rat> p = parse_weyl(op_p);
            auto poly = act_monomial(p, op_m);
            WeylOp<Rat> out;
            for (const auto& [deg, c] : poly)
                out.add_term(deg, 0, c);
            std::cout << (as_json ? weyl_to_json(out).dump(2) : print_weyl(out)) << "\n";
        } else if (op_mul->parsed() || op_comm->parsed()) {
            WeylOp<Rat> p = parse_weyl(op_p), q = parse_weyl(op_q);
            WeylOp<Rat> r = op_mul->parsed() ? weyl_mul(p, q) : commutator(p, q);
            std::cout << (as_json ? weyl_to_json(r).dump(2) : print_weyl(r)) << "\n";
        } else if (report->parsed()) {
            WeylOp<Rat> p = parse_weyl(nw_p);
            auto ws = parse_weights(nw_weights);
            if (as_json)
                std::cout << polygon_report_json(p, ws).dump(2) << "\n";
            else
                std::cout << polygon_report_text(p, ws);
        } else if (schur_compute->parsed() || nf->parsed()) {
            size_t prec = default_precision();
            long want = schur_compute->parsed() ? sc_prec : nf_prec;
            long depth = schur_compute->parsed() ? sc_depth : nf_depth;
            if (want >= 2)
                prec = static_cast<size_t>(want);
            if (static_cast<long>(prec) <= depth)
                prec = static_cast<size_t>(depth) + 2;
            WeylOp<Rat> p = parse_weyl(schur_compute->parsed() ? sc_p : nf_p);
            D1Op<Rat> pd = D1Op<Rat>::from_weyl(p, Rat(0), prec);
            VariableChange ch = VariableChange::identity(prec);
            if (!is_normalized(pd)) {
                NormalizeResult nr = normalize(pd);
                ch = nr.change;
                pd = nr.pnorm;
            }
            SchurData sd = schur(pd, depth);
            if (schur_compute->parsed()) {
                nlohmann::json j = {{"p", sd.p},
                                    {"pnorm_applied", !is_normalized(D1Op<Rat>::from_weyl(p, Rat(0), prec))},
                                    {"s", graded_to_json(sd.s)},
                                    {"s_inv", graded_to_json(sd.s_inv)}};
                std::cout << (as_json ? j.dump(2) : "S = " + print_hcpc(sd.s.to_hcpc()) + "\nS^{-1} = "
                                            + print_hcpc(sd.s_inv.to_hcpc()))
                          << "\n";
            } else {
                WeylOp<Rat> q = parse_weyl(nf_q);
                D1Op<Rat> qd = apply_change(ch, D1Op<Rat>::from_weyl(q, Rat(0), prec));
                GradedOp res = normal_form(qd, sd);
                if (as_json)
                    std::cout << graded_to_json(res).dump(2) << "\n";
                else
                    std::cout << print_hcpc(res.to_hcpc()) << "\n";
            }
        } else if (qp->parsed()) {
            Hcpc t = Hcpc::from_hcp(qp_tail(qp_p));
            std::cout << (as_json ? hcpc_to_json(t).dump(2) : print_hcpc(t)) << "\n";
        } else if (ode_solve->parsed()) {
            UPoly<Rat> g = parse_xpoly(ode_g);
            Rat c = parse_rat(ode_c);
            long z = (ode_a - 1) * ode_d;
            auto res = poly_ode_solve(g, ode_a, ode_d, z, c);
            if (as_json) {
                nlohmann::json j = {{"solvable", res.solvable}, {"unique", res.unique}};
                if (res.solvable)
                    j["h"] = print_xpoly(res.h);
                std::cout << j.dump(2) << "\n";
            } else if (res.solvable) {
                std::cout << "H = " << print_xpoly(res.h)
                          << (res.unique ? "" : "   (one representative of a family)") << "\n";
            } else {
                std::cout << "no polynomial solution\n";
            }
        } else if (rec->parsed()) {
            WeylOp<Rat> p = parse_weyl(rc_p), q = parse_weyl(rc_q);
            RecursionTrace tr = fi_recursion(p, q, rc_steps);
            nlohmann::json steps = nlohmann::json::array();
            for (const auto& s : tr.steps)
                steps.push_back({{"ord", s.ord},
                                 {"n", s.n},
                                 {"m", s.m},
                                 {"eps", print_rat(s.eps)},
                                 {"M", s.big_m},
                                 {"op", print_weyl(s.op)}});
            const char* why = nullptr;
            switch (tr.stop) {
            case RecursionStop::ZeroOrConstant: why = "zero-or-constant"; break;
            case RecursionStop::OrdBelowOne: why = "ord-below-one"; break;
            case RecursionStop::TopsNotProportional: why = "tops-not-proportional"; break;
            case RecursionStop::RootMissing: why = "root-missing-field-extension-required"; break;
            case RecursionStop::MaxSteps: why = "max-steps"; break;
            }
            nlohmann::json j = {{"stop", why}, {"steps", steps}};
            if (as_json) {
                std::cout << j.dump(2) << "\n";
            } else {
                for (size_t i = 0; i < tr.steps.size(); ++i)
                    std::cout << "step " << i << ": ord=" << tr.steps[i].ord << " n="
                              << tr.steps[i].n << " m=" << tr.steps[i].m << " eps="
                              << print_rat(tr.steps[i].eps) << " M=" << tr.steps[i].big_m << "\n";
                std::cout << "stop: " << why << "\n";
            }
        } else if (dec->parsed()) {
            WeylOp<Rat> p = parse_weyl(dc_p), q = parse_weyl(dc_q);
            DecomposeResult res = decompose_automorphism(p, q);
            if (res.ok) {
                std::cout << print_tame_word(res.word) << "\n";
                return 0;
            }
            std::cout << "failure: " << res.reason << "\n  stuck P = " << print_weyl(res.stuck_p)
                      << "\n  stuck Q = " << print_weyl(res.stuck_q) << "\n";
            return 1;
        } else if (ver->parsed()) {
            vopt.parallel = !sequential && !vopt.inject_fault;
            VerificationReport rep = lemma_suite(vopt);
            if (as_json)
                std::cout << report_to_json(rep).dump(2) << "\n";
            else
                std::cout << report_to_text(rep);
            return rep.all_pass() ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
