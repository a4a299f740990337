#include "balcert/bigfloat.hpp"

#include "balcert/errors.hpp"

#include <cstdlib>

namespace balcert {

std::string bigfloat::str(int digits, mpfr_rnd_t rnd) const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*R*e", digits - 1, rnd, v_) < 0)
        throw domain_error("bigfloat::str: mpfr_asprintf failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

bigfloat bigfloat::from_ui(unsigned long u, mpfr_prec_t prec) {
    bigfloat r(prec);
    mpfr_set_ui(r.v_, u, MPFR_RNDN); // exact for prec >= 64
    return r;
}

bigfloat bigfloat::from_double(double d, mpfr_prec_t prec) {
    bigfloat r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN); // exact for prec >= 53
    return r;
}

bigfloat bigfloat::from_str(const std::string& s, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    bigfloat r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, rnd) != 0)
        throw domain_error("bigfloat::from_str: unparsable decimal '" + s + "'");
    return r;
}

} // namespace balcert
