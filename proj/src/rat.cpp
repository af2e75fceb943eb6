#include "risch/rat.hpp"

#include <stdexcept>

namespace risch {

Rat Rat::parse(std::string_view text) {
    mpq_class q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0)
        throw std::invalid_argument("malformed rational: " + std::string(text));
    if (q.get_den() == 0) throw std::domain_error("rational with zero denominator");
    return Rat(std::move(q));
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    v_ /= o.v_;
    return *this;
}

Rat Rat::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational");
    return Rat(mpq_class(1 / v_));
}

Rat Rat::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rat(n, d);
}

}  // namespace risch
