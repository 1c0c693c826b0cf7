#include "satoric/cli.hpp"

#include "satoric/diophantine.hpp"
#include "satoric/problem.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace satoric::cli {

namespace {

class Report
{
public:
    explicit Report(std::ostream& out) : out_(out) {}
    void say(const std::string& text) { out_ << "# " << text << '\n'; }
    void kv(const std::string& key, const std::string& value) { out_ << key << '=' << value << '\n'; }
    void kv(const std::string& key, bool value) { kv(key, std::string(value ? "true" : "false")); }
    void kv(const std::string& key, const char* value) { kv(key, std::string(value)); }
    void kv(const std::string& key, const Rational& value) { kv(key, format(value)); }
    void kv(const std::string& key, const Integer& value) { kv(key, value.str()); }
    void kv(const std::string& key, const RationalPoint& value) { kv(key, format(value)); }
    void kv(const std::string& key, const LatticePoint& value) { kv(key, format(value)); }

private:
    std::ostream& out_;
};

template <class Rows> std::string join_rows(const Rows& rows)
{
    if (rows.empty())
        return "none";
    std::string s;
    for (std::size_t i = 0; i < rows.size(); ++i)
        s += (i ? ";" : "") + format(rows[i]);
    return s;
}

std::string join_cones(const std::vector<std::vector<std::size_t>>& cones)
{
    if (cones.empty())
        return "none";
    std::string s;
    for (std::size_t i = 0; i < cones.size(); ++i) {
        s += i ? ";" : "";
        for (std::size_t k = 0; k < cones[i].size(); ++k)
            s += (k ? "," : "") + std::to_string(cones[i][k]);
    }
    return s;
}

std::string join_values(const std::vector<Rational>& v)
{
    if (v.empty())
        return "none";
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ";" : "") + format(v[i]);
    return s;
}

RationalPoint parse_point(const std::string& text)
{
    RationalPoint v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        v.push_back(parse_rational(item));
    if (v.empty())
        throw std::invalid_argument("empty coordinate list '" + text + "'");
    return v;
}

LatticePoint parse_lattice_point(const std::string& text)
{
    RationalPoint v = parse_point(text);
    for (const auto& x : v)
        if (!is_integer(x))
            throw std::invalid_argument("expected integer coordinates in '" + text + "'");
    return to_integer(v);
}

Integer parse_positive(const std::string& text, const std::string& what)
{
    Rational q = parse_rational(text);
    if (!is_integer(q) || q < 1)
        throw std::invalid_argument(what + " must be a positive integer, got '" + text + "'");
    return numerator(q);
}

ProblemFile load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read problem file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

/// Explicit flag, then problem option, then SATORIC_HORIZON_DEFAULT, then the fallback.
Integer horizon_value(const std::string& flag, const ProblemFile* p, const Integer& fallback)
{
    if (!flag.empty())
        return parse_positive(flag, "--horizon");
    if (p)
        if (auto o = p->option("horizon"))
            return parse_positive(*o, "option horizon");
    if (const char* env = std::getenv("SATORIC_HORIZON_DEFAULT"))
        return parse_positive(env, "SATORIC_HORIZON_DEFAULT");
    return fallback;
}

void dump_polytope(Report& r, const PolyhedralSet& p)
{
    r.say("polytope: " + std::to_string(p.points().size()) + " points of K, recession rays " +
          std::to_string(p.recession().rays().size()));
    r.kv("polytope.vertices", join_rows(p.points()));
    r.kv("polytope.recession", join_rows(p.recession().generators()));
}

struct Options
{
    std::vector<std::string> files;
    bool dump = false;
    std::string j, period, horizon, k, m, e, eps, dilates, m0;
    bool open = false;
    std::vector<std::string> kernel, approximants;
};

int saturate(const Options& o, Report& r)
{
    ProblemFile pf = load(o.files.front());
    PolyhedralSet p = pf.polytope();
    Integer j = parse_positive(o.j.empty() ? pf.option("j").value_or("1") : o.j, "--j");
    SaturationReport rep = is_saturated(p, pf.log_discrepancy(), j);
    r.say("j*P psi-saturated for j = " + j.str() + ": " + (rep.holds ? "yes" : "no"));
    if (rep.witness)
        r.say("lattice point " + format(*rep.witness) + " lies in the open region but not in j*P");
    if (o.dump)
        dump_polytope(r, p);
    r.kv("command", "saturate");
    r.kv("j", j);
    r.kv("holds", rep.holds);
    if (rep.witness)
        r.kv("witness", *rep.witness);
    return rep.holds ? Holds : Fails;
}

int asat(const Options& o, Report& r)
{
    ProblemFile pf = load(o.files.front());
    PolyhedralSet p = pf.polytope();
    LogDiscrepancy psi = pf.log_discrepancy();
    Integer period = !o.period.empty()         ? parse_positive(o.period, "--period")
                     : pf.option("period")     ? parse_positive(*pf.option("period"), "option period")
                                               : default_period(p, psi);
    Integer horizon = horizon_value(o.horizon, &pf, 60 * period);
    auto reports = is_asymptotically_saturated(p, psi, period, horizon);
    CharacterizationReport c = characterize(p, psi);
    const SaturationReport* first = nullptr;
    for (const auto& rep : reports)
        if (!rep.holds && !first)
            first = &rep;
    r.say("direct checks for multiples of " + period.str() + " up to " + horizon.str() + ": " +
          (first ? "failure at j = " + first->j.str() : std::string("no failure")));
    r.say(std::string("characterization verdict (decisive): ") +
          (c.verdict ? "asymptotically saturated" : "not asymptotically saturated"));
    if (o.dump)
        dump_polytope(r, p);
    r.kv("command", "asat");
    r.kv("period", period);
    r.kv("horizon", horizon);
    for (const auto& rep : reports)
        r.kv("holds." + rep.j.str(), rep.holds);
    r.kv("horizon_holds", first == nullptr);
    if (first) {
        r.kv("first_failure", first->j);
        r.kv("witness", *first->witness);
    }
    r.kv("verdict", c.verdict);
    return c.verdict ? Holds : Fails;
}

int characterize_cmd(const Options& o, Report& r)
{
    ProblemFile pf = load(o.files.front());
    PolyhedralSet p = pf.polytope();
    CharacterizationReport c = characterize(p, pf.log_discrepancy());
    r.say(std::string("condition 1 (no nonzero lattice point of M'' in the open region of -psi''): ") +
          (c.cond1 ? "holds" : "fails"));
    r.say(std::string("condition 2 (psi' <= 1 on the ample-fan rays): ") + (c.cond2 ? "holds" : "fails"));
    r.say(std::string("asymptotically saturated: ") + (c.verdict ? "yes" : "no"));
    if (o.dump)
        dump_polytope(r, p);
    r.kv("command", "characterize");
    r.kv("cond1", c.cond1);
    if (c.cond1_witness)
        r.kv("cond1_witness", *c.cond1_witness);
    r.kv("cond2", c.cond2);
    if (c.cond2_ray) {
        r.kv("cond2_ray", *c.cond2_ray);
        r.kv("cond2_value", *c.cond2_value);
    }
    r.kv("n2_basis", join_rows(c.n2_basis));
    r.kv("ample_rays", join_rows(c.ample.fan.rays()));
    r.kv("verdict", c.verdict);
    return c.verdict ? Holds : Fails;
}

int amplefan(const Options& o, Report& r)
{
    ProblemFile pf = load(o.files.front());
    PolyhedralSet p = pf.polytope();
    AmpleFan a = ample_fan(p, Lattice::make(p.ambient_dim()));
    r.say("ample fan in a lattice of rank " + std::to_string(a.projection.target_rank()) + " with " +
          std::to_string(a.fan.size()) + " maximal cones");
    if (o.dump)
        dump_polytope(r, p);
    r.kv("command", "amplefan");
    r.kv("rank", std::to_string(a.projection.target_rank()));
    r.kv("projection", join_rows(a.projection.matrix()));
    r.kv("rays", join_rows(a.fan.rays()));
    r.kv("cones", join_cones(a.fan.cones()));
    return Holds;
}

int width(const Options& o, Report& r)
{
    ProblemFile pf = load(o.files.front());
    PolyhedralSet p = pf.polytope();
    WidthCertificate w = lattice_width(p);
    r.say("lattice width " + format(w.width) + " along " + format(w.direction));
    if (o.dump)
        dump_polytope(r, p);
    r.kv("command", "width");
    r.kv("width", w.width);
    r.kv("direction", w.direction);
    r.kv("argmin", w.argmin);
    r.kv("argmax", w.argmax);
    return Holds;
}

int klbound(const Options& o, Report& r)
{
    ProblemFile pf = load(o.files.front());
    KLBound k = klbound_witness(pf.log_discrepancy());
    r.say("psi(e) + psi(-e) = " + format(k.value) + " for e = " + format(k.direction) +
          " (twice the lattice width of {m : <m,e> >= -psi(e)/2})");
    if (o.dump)
        dump_polytope(r, k.body);
    r.kv("command", "klbound");
    r.kv("direction", k.direction);
    r.kv("value", k.value);
    r.kv("width", k.width.width);
    return Holds;
}

void print_dda(Report& r, const std::string& prefix, const DDAResult& d)
{
    r.kv(prefix + "k", d.k);
    r.kv(prefix + "mbar", d.mbar);
    r.kv(prefix + "gap", d.gap);
    r.kv(prefix + "norm_defect", d.norm_defect);
}

int dda(const Options& o, Report& r)
{
    if (o.e.empty() || o.eps.empty())
        throw std::invalid_argument("dda needs --e and --eps");
    DDAQuery q;
    q.e = parse_point(o.e);
    q.epsilon = parse_rational(o.eps);
    q.period = o.period.empty() ? Integer(1) : parse_positive(o.period, "--period");
    q.mode = o.open ? GapMode::Open : GapMode::Closed;
    if (!o.horizon.empty())
        q.horizon = parse_positive(o.horizon, "--horizon");
    if (!o.approximants.empty()) {
        std::vector<RationalPoint> approx;
        for (const auto& a : o.approximants)
            approx.push_back(parse_point(a));
        auto results = dda_emulate(approx, q);
        r.say("emulation: each rational approximant is solved exactly; this does not decide the irrational case");
        r.kv("command", "dda");
        r.kv("emulation", true);
        bool all = true;
        for (std::size_t i = 0; i < results.size(); ++i) {
            std::string prefix = "approximant." + std::to_string(i) + ".";
            r.kv(prefix + "m", approx[i]);
            r.kv(prefix + "solved", results[i].has_value());
            if (results[i])
                print_dda(r, prefix, *results[i]);
            all = all && results[i].has_value();
        }
        return all ? Holds : Fails;
    }
    if (o.m.empty())
        throw std::invalid_argument("dda needs --m (or --approximant)");
    q.m = parse_point(o.m);
    try {
        DDAResult d = dda_solve(q);
        r.say("k = " + d.k.str() + ", mbar = " + format(d.mbar) + ", <mbar - k m, e> = " + format(d.gap));
        r.kv("command", "dda");
        print_dda(r, "", d);
        return Holds;
    } catch (const DDAUnsatisfiable& ex) {
        r.say(ex.what());
        r.kv("command", "dda");
        r.kv("solved", false);
        r.kv("reason", ex.what());
        return Fails;
    }
}

int restrict_cmd(const Options& o, Report& r)
{
    ProblemFile pf = load(o.files.front());
    PolyhedralSet p = pf.polytope();
    LogDiscrepancy psi = pf.log_discrepancy();
    const std::size_t n = p.ambient_dim();
    std::vector<LatticePoint> kernel;
    for (const auto& k : o.kernel)
        kernel.push_back(parse_lattice_point(k));
    LatticeMap pi = kernel.empty() ? LatticeMap::identity(n) : quotient_lattice(Lattice::make(n), kernel).projection;
    LatticePoint m0;
    if (!o.m0.empty()) {
        m0 = parse_lattice_point(o.m0);
    } else {
        auto pt = integer_point(LinearSystem::of_set(p));
        if (!pt)
            throw std::invalid_argument("restrict: the set has no lattice point; pass --m0");
        m0 = *pt;
    }
    Integer k = o.k.empty() ? Integer(1) : parse_positive(o.k, "--k");
    Restriction res = restrict_to_quotient(p, psi, pi, m0, k);
    r.say("restriction to a quotient of rank " + std::to_string(pi.target_rank()) + " at m0 = " + format(m0) +
          ", k = " + k.str());
    if (o.dump)
        dump_polytope(r, res.set);
    std::vector<Rational> hv;
    for (const auto& ray : res.psi.fan().rays())
        hv.push_back(res.h(ray));
    r.kv("command", "restrict");
    r.kv("projection", join_rows(pi.matrix()));
    r.kv("m0", m0);
    r.kv("k", k);
    r.kv("set.vertices", join_rows(res.set.points()));
    r.kv("rays", join_rows(res.psi.fan().rays()));
    r.kv("h.values", join_values(hv));
    r.kv("psi.values", join_values(res.psi.values()));
    return Holds;
}

int fga(const Options& o, Report& r)
{
    ProblemFile pf = load(o.files.front());
    AlgebraSequence a = pf.algebra();
    Integer horizon = horizon_value(o.horizon, &pf, a.levels().rbegin()->first);
    FGAReport rep = fga_run(a, pf.log_discrepancy(), horizon);
    bool fg = rep.verdict == FGAVerdict::FinitelyGenerated;
    r.say(fg ? "finitely generated: h_n = n h at n = " + rep.stabilizer->str()
             : "undetermined within horizon " + horizon.str() + " (last gap " + format(rep.gap) + ")");
    if (o.dump)
        dump_polytope(r, rep.limit.set);
    bool sat = true;
    std::optional<Integer> first;
    for (const auto& s : rep.limit_saturation)
        if (!s.holds && !first) {
            sat = false;
            first = s.j;
        }
    r.kv("command", "fga");
    r.kv("horizon", horizon);
    r.kv("verdict", fg ? "finitely-generated" : "undetermined");
    r.kv("stabilizer", rep.stabilizer ? rep.stabilizer->str() : std::string("none"));
    r.kv("limit.vertices", join_rows(rep.limit.set.points()));
    r.kv("horizon_limited", rep.limit.horizon_limited);
    r.kv("limit_saturation", sat);
    if (first)
        r.kv("limit_saturation_failure", *first);
    r.kv("characterized", rep.characterized);
    r.kv("gap_log", join_values(rep.gap_log));
    r.kv("gap", rep.gap);
    if (rep.ample)
        r.kv("ample_rays", join_rows(rep.ample->fan.rays()));
    return fg ? Holds : Fails;
}

int survey(const Options& o, Report& r)
{
    Integer dilates = o.dilates.empty() ? Integer(1) : parse_positive(o.dilates, "--dilates");
    std::vector<std::pair<PolyhedralSet, LogDiscrepancy>> inst;
    for (const auto& f : o.files) {
        ProblemFile pf = load(f);
        PolyhedralSet p = pf.polytope();
        LogDiscrepancy psi = pf.log_discrepancy();
        for (Integer d = 1; d <= dilates; ++d)
            inst.emplace_back(p.scale(Rational(d)), psi);
    }
    SurveyReport rep = asyccs_survey(inst);
    std::size_t accepted = 0;
    for (const auto& e : rep.entries)
        accepted += e.accepted;
    r.say(std::to_string(accepted) + " of " + std::to_string(inst.size()) + " instances pass; " +
          std::to_string(rep.fans.size()) + " distinct ample fans; " + std::to_string(rep.exceptions.size()) +
          " rays outside the sublevel set");
    r.kv("command", "survey");
    r.kv("instances", std::to_string(inst.size()));
    r.kv("accepted", std::to_string(accepted));
    r.kv("fans", std::to_string(rep.fans.size()));
    for (std::size_t i = 0; i < rep.fans.size(); ++i) {
        r.kv("fan." + std::to_string(i) + ".rays", join_rows(rep.fans[i].fan.rays()));
        r.kv("fan." + std::to_string(i) + ".sublevel", join_rows(rep.sublevel[i]));
    }
    r.kv("exceptions", join_rows(rep.exceptions));
    return rep.exceptions.empty() ? Holds : Fails;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact toric saturation and finite generation toolkit", "satoric"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--dump-polytope", o.dump, "Print the vertex list of the relevant polyhedral set");
    app.fallthrough();

    auto file_cmd = [&](const std::string& name, const std::string& help, bool many = false) {
        CLI::App* c = app.add_subcommand(name, help);
        CLI::Option* f = c->add_option("file", o.files, many ? "Problem files" : "Problem file")->required();
        if (!many)
            f->expected(1);
        return c;
    };
    CLI::App* sat = file_cmd("saturate", "Decide whether j*P is psi-saturated");
    sat->add_option("--j", o.j, "Level j");
    CLI::App* as = file_cmd("asat", "Direct checks for multiples of I plus the characterization verdict");
    as->add_option("--period", o.period, "Period I");
    as->add_option("--horizon", o.horizon, "Largest j checked");
    CLI::App* ch = file_cmd("characterize", "Decide asymptotic saturation");
    CLI::App* af = file_cmd("amplefan", "Print the ample fan of the polytope");
    CLI::App* wd = file_cmd("width", "Lattice width of the polytope");
    CLI::App* kl = file_cmd("klbound", "Width direction bounding psi(e) + psi(-e)");
    CLI::App* dd = app.add_subcommand("dda", "Directed Diophantine approximation");
    dd->add_option("--m", o.m, "Point m, comma separated");
    dd->add_option("--e", o.e, "Direction e, comma separated");
    dd->add_option("--period", o.period, "Period I");
    dd->add_option("--eps", o.eps, "Tolerance epsilon");
    dd->add_flag("--open", o.open, "Require a strictly negative gap");
    dd->add_option("--horizon", o.horizon, "Largest k tried");
    dd->add_option("--approximant", o.approximants, "Rational approximant of an irrational m (emulation)");
    CLI::App* rs = file_cmd("restrict", "Restrict to a quotient lattice");
    rs->add_option("--kernel", o.kernel, "Kernel generator in N, comma separated");
    rs->add_option("--m0", o.m0, "Lattice point of P");
    rs->add_option("--k", o.k, "Multiplier k");
    CLI::App* fg = file_cmd("fga", "Limit, stabilization and finite generation of a graded sequence");
    fg->add_option("--horizon", o.horizon, "Largest level used");
    CLI::App* sv = file_cmd("survey", "Distinct ample fans over problem files and their dilates", true);
    sv->add_option("--dilates", o.dilates, "Dilates 1..K of every polytope");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? Holds : InputError;
    }

    Report r(out);
    try {
        if (sat->parsed())
            return saturate(o, r);
        if (as->parsed())
            return asat(o, r);
        if (ch->parsed())
            return characterize_cmd(o, r);
        if (af->parsed())
            return amplefan(o, r);
        if (wd->parsed())
            return width(o, r);
        if (kl->parsed())
            return klbound(o, r);
        if (dd->parsed())
            return dda(o, r);
        if (rs->parsed())
            return restrict_cmd(o, r);
        if (fg->parsed())
            return fga(o, r);
        if (sv->parsed())
            return survey(o, r);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return InputError;
    }
    return InputError;
}

} // namespace satoric::cli
