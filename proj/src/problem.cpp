#include "satoric/problem.hpp"

#include <sstream>

namespace satoric {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::invalid_argument(line ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what
                                 : what),
      line_(line), column_(column)
{
}

namespace {

struct Token
{
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i > start)
            out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

enum class Section { None, Fan, Sigma, Polytope, Algebra };

class Parser
{
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ProblemFile run()
    {
        std::size_t pos = 0;
        while (pos <= text_.size()) {
            std::size_t end = text_.find('\n', pos);
            if (end == std::string_view::npos)
                end = text_.size();
            ++line_;
            std::string_view raw = text_.substr(pos, end - pos);
            if (auto hash = raw.find('#'); hash != std::string_view::npos)
                raw = raw.substr(0, hash);
            if (!raw.empty() && raw.back() == '\r')
                raw.remove_suffix(1);
            line_text_ = raw;
            auto toks = tokenize(raw);
            if (!toks.empty())
                statement(toks);
            pos = end + 1;
        }
        validate();
        return std::move(p_);
    }

private:
    [[noreturn]] void fail(const std::string& what, std::size_t column) const { throw ParseError(what, line_, column); }

    Rational rational(const Token& t) const
    {
        try {
            return parse_rational(t.text);
        } catch (const std::exception&) {
            fail("expected a rational number, got '" + t.text + "'", t.column);
        }
    }

    Integer integer(const Token& t) const
    {
        Rational q = rational(t);
        if (!is_integer(q))
            fail("expected an integer, got '" + t.text + "'", t.column);
        return numerator(q);
    }

    std::size_t index(const Token& t) const
    {
        Integer v = integer(t);
        if (v < 0)
            fail("negative index '" + t.text + "'", t.column);
        return static_cast<std::size_t>(v);
    }

    void need_section(Section s, const Token& t) const
    {
        static const char* names[] = {"", "fan", "sigma", "polytope", "algebra"};
        if (section_ != s)
            fail("'" + t.text + "' is only allowed inside a '" + names[static_cast<int>(s)] + "' section", t.column);
    }

    void check_arity(const std::vector<Token>& toks, std::size_t n) const
    {
        if (toks.size() != n)
            fail("'" + toks[0].text + "' expects " + std::to_string(n - 1) + " argument(s)",
                 toks.size() > n ? toks[n].column : toks.back().column + toks.back().text.size());
    }

    void open(bool& flag, Section s, const Token& t)
    {
        if (flag)
            fail("duplicate '" + t.text + "' section", t.column);
        flag = true;
        section_ = s;
    }

    void statement(const std::vector<Token>& toks)
    {
        const std::string& kw = toks[0].text;
        if (kw == "lattice") {
            check_arity(toks, 3);
            if (toks[1].text != "rank")
                fail("expected 'rank'", toks[1].column);
            if (p_.rank)
                fail("duplicate 'lattice' line", toks[0].column);
            p_.rank = index(toks[2]);
            section_ = Section::None;
        } else if (kw == "fan") {
            check_arity(toks, 1);
            open(p_.has_fan, Section::Fan, toks[0]);
        } else if (kw == "ray") {
            need_section(Section::Fan, toks[0]);
            p_.rays.push_back(integers(toks));
        } else if (kw == "cone") {
            need_section(Section::Fan, toks[0]);
            std::vector<std::size_t> c;
            for (std::size_t i = 1; i < toks.size(); ++i)
                c.push_back(index(toks[i]));
            cone_lines_.push_back(line_);
            p_.cones.push_back(std::move(c));
        } else if (kw == "boundary") {
            need_section(Section::Fan, toks[0]);
            if (p_.boundary)
                fail("duplicate 'boundary' line", toks[0].column);
            std::vector<Rational> b;
            for (std::size_t i = 1; i < toks.size(); ++i)
                b.push_back(rational(toks[i]));
            boundary_line_ = line_;
            boundary_columns_.clear();
            for (std::size_t i = 1; i < toks.size(); ++i)
                boundary_columns_.push_back(toks[i].column);
            p_.boundary = std::move(b);
        } else if (kw == "sigma") {
            check_arity(toks, 1);
            open(p_.has_sigma, Section::Sigma, toks[0]);
        } else if (kw == "gen") {
            need_section(Section::Sigma, toks[0]);
            p_.sigma.push_back(integers(toks));
        } else if (kw == "polytope") {
            check_arity(toks, 1);
            open(p_.has_polytope, Section::Polytope, toks[0]);
        } else if (kw == "vertex") {
            need_section(Section::Polytope, toks[0]);
            RationalPoint v;
            for (std::size_t i = 1; i < toks.size(); ++i)
                v.push_back(rational(toks[i]));
            p_.vertices.push_back(std::move(v));
        } else if (kw == "algebra") {
            check_arity(toks, 3);
            if (toks[1].text != "period")
                fail("expected 'period'", toks[1].column);
            open(p_.has_algebra, Section::Algebra, toks[0]);
            p_.period = integer(toks[2]);
            if (p_.period < 1)
                fail("period must be positive", toks[2].column);
        } else if (kw == "level") {
            need_section(Section::Algebra, toks[0]);
            level(toks);
        } else if (kw == "option") {
            check_arity(toks, 3);
            for (const auto& [k, v] : p_.options)
                if (k == toks[1].text)
                    fail("duplicate option '" + k + "'", toks[1].column);
            p_.options.emplace_back(toks[1].text, toks[2].text);
        } else {
            fail("unknown keyword '" + kw + "'", toks[0].column);
        }
    }

    LatticePoint integers(const std::vector<Token>& toks) const
    {
        LatticePoint v;
        for (std::size_t i = 1; i < toks.size(); ++i)
            v.push_back(integer(toks[i]));
        return v;
    }

    void level(const std::vector<Token>& toks)
    {
        std::size_t start = toks[0].column - 1 + toks[0].text.size();
        std::string_view rest = line_text_.substr(start);
        std::size_t colon = rest.find(':');
        if (colon == std::string_view::npos)
            fail("expected 'level i: m | m ...'", toks[0].column);
        auto head = tokenize(rest.substr(0, colon));
        if (head.size() != 1)
            fail("expected a single level index before ':'", start + colon + 1);
        head[0].column += start;
        Integer i = integer(head[0]);
        if (i < 1 || i % p_.period != 0)
            fail("level " + i.str() + " is not a positive multiple of the period " + p_.period.str(), head[0].column);
        if (p_.levels.count(i))
            fail("duplicate level " + i.str(), head[0].column);
        std::vector<LatticePoint> gens;
        std::size_t offset = start + colon + 1;
        std::string_view body = rest.substr(colon + 1);
        while (true) {
            std::size_t bar = body.find('|');
            std::string_view piece = body.substr(0, bar);
            std::string item(piece);
            for (auto& ch : item)
                if (ch == ',')
                    ch = ' ';
            auto coords = tokenize(item);
            if (coords.empty())
                fail("empty generator", offset + 1);
            LatticePoint g;
            for (auto c : coords) {
                c.column += offset;
                g.push_back(integer(c));
            }
            gens.push_back(std::move(g));
            if (bar == std::string_view::npos)
                break;
            offset += bar + 1;
            body = body.substr(bar + 1);
        }
        p_.levels[i] = std::move(gens);
    }

    void validate() const
    {
        const std::size_t n = p_.ambient_rank();
        auto check_len = [&](std::size_t len, const std::string& what) {
            if (len != n)
                throw ParseError(what + " has " + std::to_string(len) + " coordinates but the lattice rank is " +
                                     std::to_string(n),
                                 0, 0);
        };
        for (std::size_t i = 0; i < p_.rays.size(); ++i)
            check_len(p_.rays[i].size(), "ray " + std::to_string(i));
        for (std::size_t i = 0; i < p_.sigma.size(); ++i)
            check_len(p_.sigma[i].size(), "sigma generator " + std::to_string(i));
        for (std::size_t i = 0; i < p_.vertices.size(); ++i)
            check_len(p_.vertices[i].size(), "vertex " + std::to_string(i));
        for (const auto& [i, gens] : p_.levels)
            for (const auto& g : gens)
                check_len(g.size(), "a generator of level " + i.str());
        for (std::size_t k = 0; k < p_.cones.size(); ++k) {
            if (p_.cones[k].empty())
                throw ParseError("cone " + std::to_string(k) + " is empty", cone_lines_[k], 1);
            for (auto r : p_.cones[k])
                if (r >= p_.rays.size())
                    throw ParseError("cone " + std::to_string(k) + " references ray " + std::to_string(r) +
                                         " but only " + std::to_string(p_.rays.size()) + " rays exist",
                                     cone_lines_[k], 1);
        }
        if (p_.boundary) {
            if (p_.boundary->size() != p_.rays.size())
                throw ParseError("boundary has " + std::to_string(p_.boundary->size()) + " entries for " +
                                     std::to_string(p_.rays.size()) + " rays",
                                 boundary_line_, 1);
            for (std::size_t i = 0; i < p_.boundary->size(); ++i)
                if ((*p_.boundary)[i] >= 1)
                    throw ParseError("b_e >= 1 violates klt (psi(e) = 1 - b_e must be positive) at ray " +
                                         std::to_string(i),
                                     boundary_line_, boundary_columns_[i]);
        }
        if (p_.has_fan && (p_.rays.empty() || p_.cones.empty()))
            throw ParseError("fan section needs at least one ray and one cone", 0, 0);
        if (p_.has_polytope && p_.vertices.empty())
            throw ParseError("polytope section needs at least one vertex", 0, 0);
        if (p_.has_algebra && p_.levels.empty())
            throw ParseError("algebra section needs at least one level", 0, 0);
    }

    std::string_view text_;
    std::string_view line_text_;
    std::size_t line_ = 0;
    Section section_ = Section::None;
    std::vector<std::size_t> cone_lines_;
    std::size_t boundary_line_ = 0;
    std::vector<std::size_t> boundary_columns_;
    ProblemFile p_;
};

} // namespace

std::size_t ProblemFile::ambient_rank() const
{
    if (rank)
        return *rank;
    if (!rays.empty())
        return rays.front().size();
    if (!sigma.empty())
        return sigma.front().size();
    if (!vertices.empty())
        return vertices.front().size();
    if (!levels.empty())
        return levels.begin()->second.front().size();
    return 0;
}

std::optional<std::string> ProblemFile::option(const std::string& key) const
{
    for (const auto& [k, v] : options)
        if (k == key)
            return v;
    return std::nullopt;
}

LogDiscrepancy ProblemFile::log_discrepancy() const
{
    if (!has_fan)
        throw std::invalid_argument("the problem has no fan section");
    std::vector<Rational> b = boundary ? *boundary : std::vector<Rational>(rays.size(), Rational(0));
    return LogDiscrepancy::from_boundary(ambient_rank(), rays, cones, b);
}

Cone ProblemFile::support_cone() const
{
    if (has_sigma)
        return Cone::from_generators(ambient_rank(), sigma);
    return log_discrepancy().support();
}

PolyhedralSet ProblemFile::polytope() const
{
    if (!has_polytope)
        throw std::invalid_argument("the problem has no polytope section");
    return PolyhedralSet::from_points(vertices, support_cone().dual());
}

AlgebraSequence ProblemFile::algebra() const
{
    if (!has_algebra)
        throw std::invalid_argument("the problem has no algebra section");
    return AlgebraSequence::make(ambient_rank(), period, levels, support_cone());
}

ProblemFile parse_problem(std::string_view text) { return Parser(text).run(); }

std::string print_problem(const ProblemFile& p)
{
    std::ostringstream out;
    auto row = [&](const char* kw, const auto& v) {
        out << kw;
        for (const auto& x : v)
            out << ' ' << format(Rational(x));
        out << '\n';
    };
    if (p.rank)
        out << "lattice rank " << *p.rank << '\n';
    if (p.has_fan) {
        out << "fan\n";
        for (const auto& r : p.rays)
            row("ray", r);
        for (const auto& c : p.cones) {
            out << "cone";
            for (auto i : c)
                out << ' ' << i;
            out << '\n';
        }
        if (p.boundary)
            row("boundary", *p.boundary);
    }
    if (p.has_sigma) {
        out << "sigma\n";
        for (const auto& g : p.sigma)
            row("gen", g);
    }
    if (p.has_polytope) {
        out << "polytope\n";
        for (const auto& v : p.vertices)
            row("vertex", v);
    }
    if (p.has_algebra) {
        out << "algebra period " << p.period.str() << '\n';
        for (const auto& [i, gens] : p.levels) {
            out << "level " << i.str() << ':';
            for (std::size_t k = 0; k < gens.size(); ++k)
                out << (k ? " | " : " ") << format(gens[k]);
            out << '\n';
        }
    }
    for (const auto& [k, v] : p.options)
        out << "option " << k << ' ' << v << '\n';
    return out.str();
}

} // namespace satoric
