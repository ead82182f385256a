#include "saito/poly_text.hpp"

namespace saito {

std::string to_canonical_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const Ring& ring = *p.ring();
    for (const auto& t : p.terms()) {
        out += (t.coeff < 0) ? '-' : '+';
        Rational a = t.coeff < 0 ? Rational(-t.coeff) : t.coeff;
        out += rational_to_string(a);
        for (std::size_t v = 0; v < ring.nvars(); ++v) {
            std::uint32_t e = t.mono.exps[v];
            if (!e) continue;
            out += '*';
            out += ring.name(v);
            if (e > 1) {
                out += '^';
                out += std::to_string(e);
            }
        }
    }
    return out;
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos, msg); }
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_name_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_name_char(char c) { return is_name_start(c) || is_digit(c); }

std::string read_digits(Cursor& cur) {
    if (cur.done() || !is_digit(cur.peek())) cur.fail("expected digits");
    std::size_t start = cur.pos;
    while (!cur.done() && is_digit(cur.peek())) ++cur.pos;
    std::string_view d = cur.text.substr(start, cur.pos - start);
    if (d.size() > 1 && d[0] == '0') throw ParseError(start, "leading zero in number");
    return std::string(d);
}

Term read_term(Cursor& cur, const Ring& ring) {
    bool neg;
    if (cur.peek() == '+')
        neg = false;
    else if (cur.peek() == '-')
        neg = true;
    else
        cur.fail("expected '+' or '-' starting a term");
    ++cur.pos;

    std::size_t coeff_at = cur.pos;
    Int num(read_digits(cur));
    Int den(1);
    if (!cur.done() && cur.peek() == '/') {
        ++cur.pos;
        std::size_t den_at = cur.pos;
        den = Int(read_digits(cur));
        if (den == 0) throw ParseError(den_at, "zero denominator");
        if (den == 1) throw ParseError(den_at, "denominator 1 must be elided");
    }
    Rational coeff = make_rational(num, den);
    if (coeff.get_num() != num || coeff.get_den() != den)
        throw ParseError(coeff_at, "fraction not in lowest terms");
    if (coeff == 0) throw ParseError(coeff_at, "zero coefficient");
    if (neg) coeff = -coeff;

    Monomial mono(ring.nvars());
    int last_var = -1;
    while (!cur.done() && cur.peek() == '*') {
        ++cur.pos;
        std::size_t name_at = cur.pos;
        if (cur.done() || !is_name_start(cur.peek())) cur.fail("expected variable name after '*'");
        std::size_t start = cur.pos;
        while (!cur.done() && is_name_char(cur.peek())) ++cur.pos;
        std::string name(cur.text.substr(start, cur.pos - start));
        int var = ring.index_of(name);
        if (var < 0) throw ParseError(name_at, "unknown variable '" + name + "'");
        if (var <= last_var)
            throw ParseError(name_at, "variables out of ring order or repeated");
        last_var = var;
        std::uint32_t exp = 1;
        if (!cur.done() && cur.peek() == '^') {
            ++cur.pos;
            std::size_t exp_at = cur.pos;
            std::string digits = read_digits(cur);
            if (digits.size() > 9) throw ParseError(exp_at, "exponent out of range");
            exp = static_cast<std::uint32_t>(std::stoul(digits));
            if (exp == 0) throw ParseError(exp_at, "zero exponent not allowed");
            if (exp == 1) throw ParseError(exp_at, "'^1' must be elided");
        }
        mono.exps[static_cast<std::size_t>(var)] = exp;
    }
    return {std::move(mono), std::move(coeff)};
}

}  // namespace

Poly parse_poly(const RingPtr& ring, std::string_view text, ParseMode mode) {
    Cursor cur{text};
    if (text.empty()) cur.fail("empty input");
    if (text == "0") return Poly::zero(ring);

    std::vector<Term> terms;
    while (!cur.done()) {
        std::size_t term_at = cur.pos;
        Term t = read_term(cur, *ring);
        if (mode == ParseMode::Strict && !terms.empty()) {
            const Monomial& prev = terms.back().mono;
            if (prev == t.mono) throw ParseError(term_at, "duplicate monomial");
            if (!ring->precedes(prev, t.mono))
                throw ParseError(term_at, "terms not in canonical descending order");
        }
        terms.push_back(std::move(t));
    }
    // In strict mode order and uniqueness were enforced term by term, so
    // from_terms is a no-op normalization; in lenient mode it sorts and merges.
    Poly p = Poly::from_terms(ring, std::move(terms));
    if (p.is_zero()) throw ParseError(0, "terms cancel to zero (write '0')");
    return p;
}

}  // namespace saito
