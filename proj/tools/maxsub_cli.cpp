// maxsub: command-line front end. Every command prints one JSON object per
// query on stdout. Exit status: 0 decided, 3 undetermined, 1 error.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <maxsub/curve.hpp>
#include <maxsub/descriptor_io.hpp>
#include <maxsub/maxsub.hpp>
#include <maxsub/newton_puiseux.hpp>
#include <maxsub/nonextending.hpp>
#include <maxsub/parse.hpp>

using namespace maxsub;

namespace {

constexpr int exit_decided = 0, exit_error = 1, exit_undetermined = 3;

struct Global {
    std::string prec = "64";
    std::string field = "Q";
    unsigned jobs = 1;

    Options options() const
    {
        Options o;
        const HahnSeries p = parse_series(prec);
        if (p.terms().size() != 1 || p.terms()[0].exp != 0 || !p.terms()[0].coeff.is_rational() ||
            p.terms()[0].coeff.rational_value() <= 0)
            fail(errc::precondition_failed, "--prec must be a positive rational");
        o.cap = p.terms()[0].coeff.rational_value();
        return o;
    }
    unsigned conductor() const { return parse_field_spec(field); }
};

std::string slurp(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        fail(errc::precondition_failed, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Inline JSON or a path to a JSON file.
json load_json(const std::string &arg)
{
    const auto first = arg.find_first_not_of(" \t\r\n");
    const std::string text = first != std::string::npos && arg[first] == '{' ? arg : slurp(arg);
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw parse_error(errc::parse_error, e.byte, "invalid JSON");
    }
}

json error_json(const error &e)
{
    json j{{"error", errc_name(e.code())}, {"message", e.what()}};
    if (auto pe = dynamic_cast<const parse_error *>(&e))
        j["position"] = pe->position();
    return j;
}

void emit(const json &j) { std::cout << j.dump() << "\n"; }

std::vector<FieldElem> parse_coords(const std::string &text, unsigned field)
{
    std::vector<FieldElem> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const LaurentPoly p = parse_expression(part, "t", "y", field);
        if (!(p.is_zero() || (p.terms().size() == 1 && p.terms().begin()->first == Exponent{0, 0})))
            fail(errc::precondition_failed, "coordinate '" + part + "' is not a constant");
        out.push_back(p.is_zero() ? FieldElem() : p.terms().begin()->second);
    }
    if (out.empty())
        fail(errc::precondition_failed, "empty coordinate list");
    return out;
}

ProjectivePoint parse_projective(const std::string &text, unsigned field)
{
    const auto c = parse_coords(text, field);
    if (c.size() != 3)
        fail(errc::precondition_failed, "projective point needs three coordinates");
    return ProjectivePoint::make(c[0], c[1], c[2]);
}

std::vector<std::string> default_names(std::size_t n)
{
    static const std::vector<std::string> base{"x", "y", "z", "w"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(i < base.size() ? base[i] : "x" + std::to_string(i + 1));
    return out;
}

std::vector<std::string> split_names(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ','))
        if (!part.empty())
            out.push_back(part);
    return out;
}

// Runs fn on each input line (in parallel with --jobs) and prints results
// in input order. Returns the worst exit code.
template <class F>
int run_batch(const std::vector<std::string> &inputs, unsigned jobs, F fn)
{
    std::vector<std::pair<json, int>> results(inputs.size());
    auto work = [&](std::size_t start, std::size_t step) {
        for (std::size_t i = start; i < inputs.size(); i += step) {
            try {
                results[i] = fn(inputs[i]);
            } catch (const error &e) {
                results[i] = {error_json(e), e.code() == errc::undetermined ? exit_undetermined : exit_error};
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, inputs.size()))));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < jobs; ++k)
        pool.emplace_back(work, k, jobs);
    work(0, jobs);
    for (auto &t : pool)
        t.join();
    int code = exit_decided;
    for (const auto &[j, c] : results) {
        emit(j);
        if (c == exit_error || (c == exit_undetermined && code == exit_decided))
            code = c;
    }
    return code;
}

std::vector<std::string> read_lines(const std::string &path)
{
    std::vector<std::string> out;
    std::istream *in = &std::cin;
    std::ifstream file;
    if (path != "-") {
        file.open(path);
        if (!file)
            fail(errc::precondition_failed, "cannot read '" + path + "'");
        in = &file;
    }
    std::string line;
    while (std::getline(*in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            out.push_back(line);
    return out;
}

std::pair<json, int> membership_json(const MembershipResult &r)
{
    json j{{"verdict", verdict_name(r.verdict)}, {"member", r.member()}};
    if (r.omega)
        j["omega"] = to_string(*r.omega);
    if (r.verdict == Verdict::undetermined) {
        j["precision_reached"] = r.reached.is_finite() ? to_string(r.reached.value()) : "inf";
        return {j, exit_undetermined};
    }
    return {j, exit_decided};
}

json character_json(const Character &c) { return {{"N", c.modulus}, {"zeta", c.zeta.str()}}; }

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Maximal subalgebra membership and classification tools"};
    app.require_subcommand(1);
    Global g;
    app.add_option("--prec", g.prec, "Precision cap for expansions and streams (rational)")->capture_default_str();
    app.add_option("--field", g.field, "Coefficient field: Q or zeta:N")->capture_default_str();
    app.add_option("--jobs", g.jobs, "Worker threads for batch queries")->capture_default_str();

    std::string alg, expr, batch, alg_b;
    bool poly = false;

    auto *member = app.add_subcommand("member", "Membership of an element in a subalgebra");
    auto *crucial = app.add_subcommand("crucial", "Membership in the crucial maximal ideal");
    for (auto *sc : {member, crucial}) {
        sc->add_option("--alg", alg, "Subalgebra descriptor (JSON text or file)")->required();
        sc->add_flag("--poly", poly, "Restrict the algebra to k[t, y]");
        sc->add_option("expr", expr, "Element of k[t, 1/t, y]");
        sc->add_option("--batch", batch, "File with one expression per line ('-' for stdin)");
    }

    auto *cond = app.add_subcommand("conductor", "Generator of the conductor ideal");
    cond->add_option("--alg", alg, "Subalgebra descriptor")->required();
    cond->add_flag("--poly", poly, "Restrict the algebra to k[t, y]");

    std::size_t ngen = 3;
    auto *gens = app.add_subcommand("generators", "First generators (y - a_i)/t^s_i of Psi(alpha)");
    gens->add_option("--alg", alg, "Subalgebra descriptor (psi case)")->required();
    gens->add_option("-n,--count", ngen, "Number of generators")->capture_default_str();

    auto *equiv = app.add_subcommand("equiv", "Character-orbit equivalence of two alphas");
    equiv->add_option("a", alg, "First descriptor")->required();
    equiv->add_option("b", alg_b, "Second descriptor")->required();

    std::string to = "4";
    auto *puis = app.add_subcommand("puiseux", "Puiseux branches of a polynomial in k[t][y]");
    puis->add_option("expr", expr, "Polynomial")->required();
    puis->add_option("--to", to, "Expansion precision (rational)")->capture_default_str();

    std::string curve, point, vector_arg, vars, relation;
    std::vector<std::string> points;
    auto *inf = app.add_subcommand("curve-infinity", "Points at infinity of a plane curve");
    inf->add_option("curve", curve, "Curve equation in x, y")->required();

    auto *def = app.add_subcommand("defined-at", "Is h defined at a point at infinity of the curve");
    def->add_option("--curve", curve, "Curve equation")->required();
    def->add_option("--point", point, "Projective point a,b,c")->required();
    def->add_option("--member", expr, "Function h in x, y");

    auto *tan = app.add_subcommand("tangency", "Tangency order with the line at infinity");
    tan->add_option("--curve", curve, "Curve equation")->required();
    tan->add_option("--point", point, "Projective point")->required();

    auto *noncoord = app.add_subcommand("noncoordinate", "Membership in the non-coordinate maximal subalgebra");
    noncoord->add_option("--curve", curve, "Curve equation")->required();
    noncoord->add_option("--point", point, "Projective point")->required();
    noncoord->add_option("--member", expr, "Polynomial in x, y");

    auto *glue = app.add_subcommand("glue", "Glue two closed points");
    glue->add_option("--point", points, "Closed point (twice)")->required()->expected(2);
    auto *tangent = app.add_subcommand("tangent", "Delete a tangent direction");
    tangent->add_option("--point", point, "Base point")->required();
    tangent->add_option("--vector", vector_arg, "Tangent vector")->required();
    long degree = -1;
    for (auto *sc : {glue, tangent}) {
        sc->add_option("--member", expr, "Element to test");
        sc->add_option("--vars", vars, "Comma-separated variable names");
        sc->add_option("--relation", relation, "Comma-free relation polynomial");
        sc->add_option("--basis", degree, "Print a basis of members up to this degree");
    }

    bool has_t = false, has_tinv = false;
    long k = 0;
    auto *norm = app.add_subcommand("normalize", "Bring an extending maximal subalgebra to standard form");
    norm->add_flag("--contains-t", has_t, "A contains t");
    norm->add_flag("--contains-tinv", has_tinv, "A contains 1/t");
    auto *kopt = norm->add_option("--k", k, "Minimal k with t^k y in A");

    std::string what = "p2";
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    auto *check = app.add_subcommand("check", "Property checks: p2 sampling or the N condition");
    check->add_option("what", what, "p2 | n-condition")->check(CLI::IsMember({"p2", "n-condition"}));
    check->add_option("--alg", alg, "Subalgebra descriptor")->required();
    check->add_option("--trials", trials, "Samples for p2")->capture_default_str();
    check->add_option("--seed", seed, "Random seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        const Options opt = g.options();
        const unsigned field = g.conductor();

        auto load_alg = [&](const std::string &a) {
            SubalgebraDescriptor d = descriptor_from_json(load_json(a), field, opt);
            if (poly)
                d = polynomial_part(d);
            return d;
        };

        if (member->parsed() || crucial->parsed()) {
            const SubalgebraDescriptor d = load_alg(alg);
            const bool cru = crucial->parsed();
            std::vector<std::string> inputs;
            if (!batch.empty())
                inputs = read_lines(batch);
            else if (!expr.empty())
                inputs.push_back(expr);
            else
                fail(errc::precondition_failed, "give an expression or --batch");
            return run_batch(inputs, g.jobs, [&](const std::string &e) {
                const LaurentPoly f = parse_expression(e, "t", "y", field);
                return membership_json(cru ? crucial_membership(f, d, opt) : membership(f, d, opt));
            });
        }
        if (cond->parsed()) {
            const SubalgebraDescriptor d = load_alg(alg);
            const auto c = conductor(d, opt);
            emit({{"conductor", c ? json(c->str()) : json(nullptr)}, {"zero", !c}});
            return exit_decided;
        }
        if (gens->parsed()) {
            const SubalgebraDescriptor d = load_alg(alg);
            if (d.kind != CaseKind::psi || !d.sigma.is_identity())
                fail(errc::precondition_failed, "generators are listed for Psi(alpha) descriptors");
            json list = json::array();
            for (const auto &x : generators(d.alpha, ngen, opt))
                list.push_back(x.str());
            emit({{"generators", list}});
            return exit_decided;
        }
        if (equiv->parsed()) {
            const SubalgebraDescriptor a = load_alg(alg), b = load_alg(alg_b);
            if (a.kind != b.kind)
                fail(errc::precondition_failed, "descriptors of different cases");
            const OrbitResult r = orbit_equivalent(a.alpha, b.alpha, opt);
            json j{{"equivalent", r.character.has_value()}};
            if (r.character)
                j["character"] = character_json(*r.character);
            j["exact"] = r.exact;
            emit(j);
            return exit_decided;
        }
        if (puis->parsed()) {
            const LaurentPoly p = parse_expression(expr, "t", "y", field);
            const HahnSeries tv = parse_series(to);
            const Rat prec = tv.terms().empty() ? Rat(0) : tv.terms()[0].coeff.rational_value();
            json list = json::array();
            for (const auto &b : puiseux_expand(p, prec, CycloField(field)))
                list.push_back({{"expansion", b.expansion.str()},
                                {"multiplicity", b.multiplicity},
                                {"ramification", b.ramification},
                                {"exact", b.expansion.is_exact()}});
            emit({{"branches", list}});
            return exit_decided;
        }
        const std::vector<std::string> xy{"x", "y"};
        if (inf->parsed()) {
            const PlaneCurve c(parse_mpoly(curve, xy, field), CycloField(field));
            json list = json::array();
            for (const auto &p : points_at_infinity(c))
                list.push_back({{"point", p.str()}, {"smooth", is_smooth_at(c, p)}});
            emit({{"points", list}});
            return exit_decided;
        }
        if (def->parsed() || noncoord->parsed()) {
            const PlaneCurve c(parse_mpoly(curve, xy, field), CycloField(field));
            const ProjectivePoint p = parse_projective(point, field);
            const MPoly h = parse_mpoly(expr.empty() ? "1" : expr, xy, field);
            if (noncoord->parsed()) {
                emit({{"member", noncoordinate_membership(h, c, p, opt.cap)}});
                return exit_decided;
            }
            const auto o = branch_order(h, c, p, opt.cap);
            emit({{"defined", !o || *o >= 0}, {"order", o ? json(to_string(*o)) : json("inf")}});
            return exit_decided;
        }
        if (tan->parsed()) {
            const PlaneCurve c(parse_mpoly(curve, xy, field), CycloField(field));
            const ProjectivePoint p = parse_projective(point, field);
            emit({{"tangency", tangency_order(c, p, opt.cap)}, {"point", p.str()}});
            return exit_decided;
        }
        if (glue->parsed() || tangent->parsed()) {
            const auto first = parse_coords(glue->parsed() ? points.at(0) : point, field);
            FinitelyPresentedAlgebra R;
            R.names = vars.empty() ? default_names(first.size()) : split_names(vars);
            if (!relation.empty())
                R.relations.push_back(parse_mpoly(relation, R.names, field));
            Construction con = FieldExtensionConstruction{R};
            if (glue->parsed())
                con = GlueConstruction{R, {first}, {parse_coords(points.at(1), field)}};
            else
                con = TangentConstruction{R, {{first}, parse_coords(vector_arg, field)}};
            validate(con);
            json j;
            if (!expr.empty())
                j["member"] = construction_membership(con, parse_mpoly(expr, R.names, field));
            if (degree >= 0) {
                json list = json::array();
                for (const auto &f : filtered_basis(con, degree))
                    list.push_back(f.str(R.names));
                j["basis"] = list;
            }
            if (j.is_null())
                fail(errc::precondition_failed, "give --member or --basis");
            emit(j);
            return exit_decided;
        }
        if (norm->parsed()) {
            NormalizeInput in{has_t, has_tinv, std::nullopt};
            if (kopt->count() > 0)
                in.k = k;
            const NormalizeResult r = normalize(in);
            emit({{"case", r.kind == CaseKind::psi ? "i" : "ii"},
                  {"sigma", {{"swap", r.sigma.swap}, {"twist", r.sigma.twist}}}});
            return exit_decided;
        }
        if (check->parsed()) {
            const SubalgebraDescriptor d = load_alg(alg);
            if (what == "n-condition") {
                emit({{"n_condition", n_condition_check(d.alpha, opt)}});
                return exit_decided;
            }
            P2Sampling s;
            s.trials = trials;
            s.seed = seed;
            const P2Report rep = p2_sample_check(d, s, opt);
            json ce = json::array();
            for (const auto &[r, q] : rep.counterexamples)
                ce.push_back({{"r", r.str()}, {"q", q.str()}});
            emit({{"trials", rep.trials},
                  {"checked", rep.checked},
                  {"skipped", rep.skipped},
                  {"counterexamples", ce}});
            return rep.counterexamples.empty() ? exit_decided : exit_error;
        }
    } catch (const error &e) {
        emit(error_json(e));
        return e.code() == errc::undetermined ? exit_undetermined : exit_error;
    } catch (const std::exception &e) {
        emit({{"error", "Internal"}, {"message", e.what()}});
        return exit_error;
    }
    return exit_error;
}
