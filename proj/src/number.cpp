#include "partsample/number.hpp"

#include <stdexcept>

#include "partsample/errors.hpp"

namespace partsample {

BigInt binomial(unsigned long n, unsigned long r) {
    if (r > n) return 0;
    if (r > n - r) r = n - r;
    // Multiplicative formula; every partial product is itself a binomial
    // coefficient so the division is exact.
    BigInt acc = 1;
    for (unsigned long i = 1; i <= r; ++i) {
        acc *= n - r + i;
        mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), i);
    }
    return acc;
}

std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal_string(const Rational& q, int digits) {
    if (digits < 0) throw std::invalid_argument("digits must be nonnegative");
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));

    const bool negative = sgn(q) < 0;
    BigInt num = abs(q.get_num()) * scale;
    const BigInt& den = q.get_den();
    BigInt quot, rem;
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const int cmp_half = cmp(BigInt(2 * rem), den);
    if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(quot.get_mpz_t()))) ++quot;

    std::string body = quot.get_str();
    if (digits > 0) {
        if (body.size() <= static_cast<std::size_t>(digits))
            body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
        body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    }
    if (negative && quot != 0) body.insert(0, "-");
    return body;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational parse_fraction(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0)
        throw ParseError("not a fraction: '" + text + "'");
    q.canonicalize();
    return q;
}

}  // namespace partsample
