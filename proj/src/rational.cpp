#include "saito/rational.hpp"

namespace saito {

Rational rational_from_string(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("rational_from_string: empty input");
    bool neg = false;
    std::size_t pos = 0;
    if (text[0] == '+' || text[0] == '-') {
        neg = text[0] == '-';
        pos = 1;
    }
    auto read_digits = [&](std::size_t& p) {
        std::size_t start = p;
        while (p < text.size() && text[p] >= '0' && text[p] <= '9') ++p;
        if (p == start) throw std::invalid_argument("rational_from_string: expected digits");
        return std::string(text.substr(start, p - start));
    };
    std::string num = read_digits(pos);
    std::string den = "1";
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = read_digits(pos);
    }
    if (pos != text.size()) throw std::invalid_argument("rational_from_string: trailing characters");
    Rational r = make_rational(Int(num), Int(den));
    return neg ? Rational(-r) : r;
}

std::string rational_to_string(const Rational& r) {
    std::string s = r.get_num().get_str();
    if (r.get_den() != 1) {
        s += '/';
        s += r.get_den().get_str();
    }
    return s;
}

Rational rational_pow(const Rational& base, unsigned long exp) {
    Rational r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), exp);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), exp);
    // base was canonical, so num^e / den^e already is.
    return r;
}

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    Int num_root, den_root;
    if (!mpz_perfect_square_p(r.get_num().get_mpz_t())) return std::nullopt;
    if (!mpz_perfect_square_p(r.get_den().get_mpz_t())) return std::nullopt;
    mpz_sqrt(num_root.get_mpz_t(), r.get_num().get_mpz_t());
    mpz_sqrt(den_root.get_mpz_t(), r.get_den().get_mpz_t());
    return make_rational(num_root, den_root);
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace saito
