#include "weylkit/io.hpp"

#include <cctype>
#include <sstream>

#include <json.hpp>

namespace weylkit {

std::string print_rat(const Rat& r)
{
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1)
        os << "/" << denominator(r);
    return os.str();
}

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    void skip_ws()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool eof()
    {
        skip_ws();
        return pos >= s.size();
    }
    char peek()
    {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c)
    {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "' at position " + std::to_string(pos)
                             + " in \"" + s + "\"");
    }
    BigInt integer()
    {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+'))
            ++pos;
        size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos == digits)
            throw ParseError("expected integer at position " + std::to_string(start) + " in \"" + s + "\"");
        return BigInt(s.substr(start, pos - start));
    }
    long small_integer() { return integer().convert_to<long>(); }
    Rat rational()
    {
        BigInt n = integer();
        if (accept('/')) {
            BigInt d = integer();
            if (d == 0)
                throw ParseError("zero denominator in rational literal");
            return make_rat(n, d);
        }
        return Rat(n);
    }
};

// cyclotomic body: sum of terms  r | r*z^e | z^e | -z^e ...
CycElem parse_cyc_body(Cursor& c, const CycFieldPtr& f)
{
    CycElem acc = CycElem::zero(f);
    bool first = true;
    while (true) {
        c.skip_ws();
        int sign = 1;
        if (c.accept('+')) {
        } else if (c.accept('-')) {
            sign = -1;
        } else if (!first) {
            break;
        }
        first = false;
        Rat coef(1);
        bool saw_coef = false;
        c.skip_ws();
        if (c.peek() != 'z') {
            coef = c.rational();
            saw_coef = true;
        }
        long e = 0;
        bool saw_z = false;
        if (saw_coef ? c.accept('*') : true) {
            if (c.peek() == 'z') {
                c.expect('z');
                saw_z = true;
                e = c.accept('^') ? c.small_integer() : 1;
            } else if (saw_coef) {
                throw ParseError("expected z after '*' in cyclotomic literal");
            }
        }
        if (sign < 0)
            coef = -coef;
        CycElem term = saw_z ? CycElem::root_power(f, e) : CycElem::one(f);
        acc += term * coef;
        c.skip_ws();
        if (c.peek() != '+' && c.peek() != '-')
            break;
    }
    return acc;
}

} // namespace

Rat parse_rat(const std::string& s)
{
    Cursor c{s};
    Rat r = c.rational();
    if (!c.eof())
        throw ParseError("trailing characters in rational: \"" + s + "\"");
    return r;
}

std::string print_cyc(const CycElem& c)
{
    std::ostringstream os;
    os << "(";
    bool first = true;
    const auto& v = c.coeffs();
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero())
            continue;
        Rat a = v[i];
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0)
                a = -a;
        }
        first = false;
        bool unit = a == 1 && i > 0;
        if (!unit)
            os << print_rat(a);
        if (i > 0) {
            if (!unit)
                os << "*";
            os << "z";
            if (i > 1)
                os << "^" << i;
        }
    }
    if (first)
        os << "0";
    os << ")@" << c.field()->conductor();
    return os.str();
}

CycElem parse_cyc(const std::string& s)
{
    Cursor c{s};
    c.expect('(');
    size_t body_start = c.pos;
    int depth = 1;
    size_t i = body_start;
    for (; i < s.size() && depth > 0; ++i) {
        if (s[i] == '(')
            ++depth;
        if (s[i] == ')')
            --depth;
    }
    if (depth != 0)
        throw ParseError("unbalanced parentheses in cyclotomic literal");
    size_t body_end = i - 1;
    Cursor tail{s};
    tail.pos = i;
    tail.expect('@');
    long k = tail.small_integer();
    if (!tail.eof())
        throw ParseError("trailing characters in cyclotomic literal");
    CycFieldPtr f = CycField::get(static_cast<unsigned>(k));
    std::string body = s.substr(body_start, body_end - body_start);
    Cursor bc{body};
    CycElem e = parse_cyc_body(bc, f);
    if (!bc.eof())
        throw ParseError("trailing characters inside cyclotomic literal: \"" + body + "\"");
    return e;
}

std::string print_series(const TruncSeries<Rat>& s)
{
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < s.precision(); ++i) {
        if (s[i].is_zero())
            continue;
        Rat a = s[i];
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0)
                a = -a;
        }
        first = false;
        bool unit = a == 1 && i > 0;
        if (!unit)
            os << print_rat(a);
        if (i > 0) {
            if (!unit)
                os << "*";
            os << "x";
            if (i > 1)
                os << "^" << i;
        }
    }
    if (first)
        os << "0";
    os << " + O(x^" << s.precision() << ")";
    return os.str();
}

TruncSeries<Rat> parse_series(const std::string& s)
{
    size_t opos = s.rfind("O(x^");
    if (opos == std::string::npos)
        throw ParseError("series literal must end with O(x^M)");
    Cursor tail{s};
    tail.pos = opos + 4;
    long m = tail.small_integer();
    tail.expect(')');
    if (!tail.eof())
        throw ParseError("trailing characters after O(x^M)");
    if (m < 1)
        throw ParseError("series precision must be positive");
    std::vector<Rat> coeffs(static_cast<size_t>(m), Rat(0));

    std::string body = s.substr(0, opos);
    size_t plus = body.rfind('+');
    if (plus == std::string::npos)
        throw ParseError("series literal must end with + O(x^M)");
    body = body.substr(0, plus);

    Cursor c{body};
    bool first = true;
    while (!c.eof()) {
        int sign = 1;
        if (c.accept('+')) {
        } else if (c.accept('-')) {
            sign = -1;
        } else if (!first) {
            throw ParseError("expected + or - between series terms");
        }
        first = false;
        Rat coef(1);
        bool saw_coef = false;
        if (c.peek() != 'x') {
            coef = c.rational();
            saw_coef = true;
        }
        long e = 0;
        if (saw_coef ? c.accept('*') : true) {
            if (c.peek() == 'x') {
                c.expect('x');
                e = c.accept('^') ? c.small_integer() : 1;
            } else if (saw_coef) {
                throw ParseError("expected x after '*' in series term");
            }
        }
        if (sign < 0)
            coef = -coef;
        if (e < 0)
            throw ParseError("negative exponent in series term");
        if (e < m)
            coeffs[static_cast<size_t>(e)] += coef;
    }
    return TruncSeries<Rat>(std::move(coeffs));
}

namespace {

void print_weyl_factor(std::ostringstream& os, const Rat& coef_in, long i, long j, bool first)
{
    Rat a = coef_in;
    if (first) {
        if (a < 0) {
            os << "-";
            a = -a;
        }
    } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0)
            a = -a;
    }
    bool bare = i == 0 && j == 0;
    bool unit = a == 1 && !bare;
    if (!unit)
        os << print_rat(a);
    bool star = !unit;
    if (i > 0) {
        if (star)
            os << "*";
        os << "x";
        if (i > 1)
            os << "^" << i;
        star = true;
    }
    if (j > 0) {
        if (star)
            os << "*";
        os << "d";
        if (j > 1)
            os << "^" << j;
    }
}

} // namespace

std::string print_weyl(const WeylOp<Rat>& p)
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : p.terms()) {
        print_weyl_factor(os, c, k.first, k.second, first);
        first = false;
    }
    return os.str();
}

WeylOp<Rat> parse_weyl(const std::string& s)
{
    WeylOp<Rat> p;
    Cursor c{s};
    if (c.eof())
        throw ParseError("empty operator literal");
    bool first = true;
    while (!c.eof()) {
        int sign = 1;
        if (c.accept('+')) {
        } else if (c.accept('-')) {
            sign = -1;
        } else if (!first) {
            throw ParseError("expected + or - between operator terms");
        }
        first = false;
        Rat coef(1);
        bool saw_coef = false;
        c.skip_ws();
        char ch = c.peek();
        if (ch != 'x' && ch != 'd') {
            coef = c.rational();
            saw_coef = true;
        }
        long i = 0, j = 0;
        bool expect_factor = saw_coef ? c.accept('*') : true;
        while (expect_factor) {
            char f = c.peek();
            if (f == 'x') {
                c.expect('x');
                i += c.accept('^') ? c.small_integer() : 1;
            } else if (f == 'd') {
                c.expect('d');
                j += c.accept('^') ? c.small_integer() : 1;
            } else if (saw_coef || i > 0 || j > 0) {
                break;
            } else {
                throw ParseError("expected term at position " + std::to_string(c.pos));
            }
            expect_factor = c.accept('*');
        }
        if (i < 0 || j < 0)
            throw ParseError("negative exponent in operator term");
        p.add_term(i, j, sign < 0 ? Rat(-coef) : coef);
    }
    return p;
}

nlohmann::json weyl_to_json(const WeylOp<Rat>& p)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : p.terms())
        terms.push_back({{"i", k.first}, {"j", k.second}, {"coeff", print_rat(c)}});
    return {{"terms", terms}};
}

WeylOp<Rat> weyl_from_json(const nlohmann::json& j)
{
    WeylOp<Rat> p;
    for (const auto& t : j.at("terms"))
        p.add_term(t.at("i").get<long>(), t.at("j").get<long>(),
                   parse_rat(t.at("coeff").get<std::string>()));
    return p;
}

namespace {

std::string cyc_body_string(const CycElem& c)
{
    std::string s = print_cyc(c);
    size_t at = s.rfind(")@");
    return s.substr(0, at + 1);
}

} // namespace

std::string print_hcpc(const Hcpc& h)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [r, comp] : h.components()) {
        for (const auto& [key, c] : comp.xa()) {
            os << (first ? "" : " + ");
            first = false;
            os << cyc_body_string(c) << "*x^" << key.first << "*A_" << key.second << "*d^"
               << key.first << "*D^" << r;
        }
        for (const auto& [j, c] : comp.b()) {
            os << (first ? "" : " + ");
            first = false;
            os << cyc_body_string(c) << "*B_" << j << "*D^" << r;
        }
    }
    if (first)
        os << "0";
    os << " @" << h.modulus();
    return os.str();
}

Hcpc parse_hcpc(const std::string& s)
{
    size_t at = s.rfind('@');
    if (at == std::string::npos)
        throw ParseError("HCPC literal needs an @k modulus suffix");
    Cursor tail{s};
    tail.pos = at + 1;
    long k = tail.small_integer();
    if (!tail.eof())
        throw ParseError("trailing characters after modulus");
    CycFieldPtr f = CycField::get(static_cast<unsigned>(k));
    Hcpc out(static_cast<unsigned>(k));

    std::string body = s.substr(0, at);
    Cursor c{body};
    if (c.eof())
        throw ParseError("empty HCPC literal");
    bool first = true;
    while (!c.eof()) {
        int sign = 1;
        if (c.accept('+')) {
        } else if (c.accept('-')) {
            sign = -1;
        } else if (!first) {
            throw ParseError("expected + or - between HCPC terms");
        }
        first = false;
        c.skip_ws();
        if (c.peek() == '0' && out.is_zero()) {
            c.expect('0');
            continue;
        }
        CycElem coef = CycElem::one(f);
        if (c.peek() == '(') {
            size_t start = c.pos + 1;
            int depth = 0;
            size_t i = c.pos;
            for (; i < body.size(); ++i) {
                if (body[i] == '(')
                    ++depth;
                if (body[i] == ')' && --depth == 0)
                    break;
            }
            if (depth != 0)
                throw ParseError("unbalanced parentheses in coefficient");
            std::string inner = body.substr(start, i - start);
            Cursor bc{inner};
            coef = parse_cyc_body(bc, f);
            if (!bc.eof())
                throw ParseError("bad cyclotomic coefficient: " + inner);
            c.pos = i + 1;
            c.expect('*');
        } else if (c.peek() != 'x' && c.peek() != 'A' && c.peek() != 'B' && c.peek() != 'd'
                   && c.peek() != 'D') {
            coef = CycElem::from_rat(f, c.rational());
            if (!c.accept('*')) {
                // bare scalar term
                if (sign < 0)
                    coef = -coef;
                out.add(Hcp::xa_atom(static_cast<unsigned>(k), 0, 0, 0, coef));
                continue;
            }
        }
        if (sign < 0)
            coef = -coef;

        long l = 0, i_idx = 0, r = 0, bj = -1;
        bool is_b = false;
        if (c.peek() == 'B') {
            c.expect('B');
            c.expect('_');
            bj = c.small_integer();
            is_b = true;
        } else {
            if (c.peek() == 'x') {
                c.expect('x');
                l = c.accept('^') ? c.small_integer() : 1;
                c.expect('*');
            }
            c.expect('A');
            c.expect('_');
            i_idx = c.small_integer();
            if (l > 0) {
                c.expect('*');
                c.expect('d');
                long l2 = c.accept('^') ? c.small_integer() : 1;
                if (l2 != l)
                    throw ParseError("HCPC atom must have matching x and d powers");
            }
        }
        if (c.accept('*')) {
            c.expect('D');
            c.expect('^');
            r = c.small_integer();
        }
        if (is_b)
            out.add(Hcp::b_atom(static_cast<unsigned>(k), r, bj, coef));
        else
            out.add(Hcp::xa_atom(static_cast<unsigned>(k), r, l, i_idx, coef));
    }
    return out;
}

nlohmann::json hcpc_to_json(const Hcpc& h)
{
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& [r, comp] : h.components()) {
        nlohmann::json xa = nlohmann::json::array();
        for (const auto& [key, c] : comp.xa())
            xa.push_back({{"l", key.first}, {"i", key.second}, {"coeff", print_cyc(c)}});
        nlohmann::json b = nlohmann::json::array();
        for (const auto& [j, c] : comp.b())
            b.push_back({{"j", j}, {"coeff", print_cyc(c)}});
        comps.push_back({{"order", r}, {"xa", xa}, {"b", b}});
    }
    return {{"modulus", h.modulus()}, {"components", comps}};
}

Hcpc hcpc_from_json(const nlohmann::json& j)
{
    unsigned k = j.at("modulus").get<unsigned>();
    Hcpc out(k);
    for (const auto& comp : j.at("components")) {
        long r = comp.at("order").get<long>();
        for (const auto& t : comp.at("xa"))
            out.add(Hcp::xa_atom(k, r, t.at("l").get<long>(), t.at("i").get<long>(),
                                 parse_cyc(t.at("coeff").get<std::string>())));
        for (const auto& t : comp.at("b"))
            out.add(Hcp::b_atom(k, r, t.at("j").get<long>(),
                                parse_cyc(t.at("coeff").get<std::string>())));
    }
    return out;
}

nlohmann::json graded_to_json(const GradedOp& g)
{
    nlohmann::json j = hcpc_to_json(g.to_hcpc());
    j["top"] = g.ord() ? nlohmann::json(*g.ord()) : nlohmann::json();
    if (!g.exact())
        j["depth_lo"] = g.lo();
    return j;
}

nlohmann::json polygon_report_json(const WeylOp<Rat>& p, const std::vector<Weight>& ws)
{
    BivarPoly<Rat> f = BivarPoly<Rat>::from_weyl(p);
    PolygonData pd = polygon_data(f);
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [i, j] : pd.points)
        pts.push_back({i, j});
    nlohmann::json hull = nlohmann::json::array();
    for (const auto& [i, j] : pd.hull)
        hull.push_back({i, j});
    nlohmann::json tops = nlohmann::json::array();
    for (const Weight& w : ws) {
        auto [v, top] = weight_degree(f, w);
        nlohmann::json ts = nlohmann::json::array();
        for (const auto& [i, j] : top)
            ts.push_back({i, j});
        tops.push_back({{"sigma", print_rat(w.sigma)},
                        {"rho", print_rat(w.rho)},
                        {"value", print_rat(v)},
                        {"top", ts}});
    }
    Corners c = corners(p);
    nlohmann::json corner_j = {{"en_10", {c.en_10.first, c.en_10.second}},
                               {"st_10", {c.st_10.first, c.st_10.second}},
                               {"en_01", {c.en_01.first, c.en_01.second}},
                               {"st_01", {c.st_01.first, c.st_01.second}}};
    return {{"operator", print_weyl(p)},
            {"points", pts},
            {"hull", hull},
            {"weights", tops},
            {"corners", corner_j},
            {"subrectangular", is_subrectangular(p)}};
}

std::string polygon_report_text(const WeylOp<Rat>& p, const std::vector<Weight>& ws)
{
    std::ostringstream os;
    os << "operator: " << print_weyl(p) << "\n";
    BivarPoly<Rat> f = BivarPoly<Rat>::from_weyl(p);
    PolygonData pd = polygon_data(f);
    os << "points:";
    for (const auto& [i, j] : pd.points)
        os << " (" << i << "," << j << ")";
    os << "\nhull:";
    for (const auto& [i, j] : pd.hull)
        os << " (" << i << "," << j << ")";
    os << "\n";
    for (const Weight& w : ws) {
        auto [v, top] = weight_degree(f, w);
        os << "v_{" << print_rat(w.sigma) << "," << print_rat(w.rho) << "} = " << print_rat(v)
           << "; top:";
        for (const auto& [i, j] : top)
            os << " (" << i << "," << j << ")";
        os << "\n";
    }
    Corners c = corners(p);
    os << "corners: en_10 (" << c.en_10.first << "," << c.en_10.second << "), st_10 ("
       << c.st_10.first << "," << c.st_10.second << "), en_01 (" << c.en_01.first << ","
       << c.en_01.second << "), st_01 (" << c.st_01.first << "," << c.st_01.second << ")\n";
    os << "subrectangular: " << (is_subrectangular(p) ? "yes" : "no") << "\n";
    return os.str();
}

} // namespace weylkit
