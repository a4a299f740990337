#pragma once

#include <mpfr.h>

#include <string>

namespace balcert {

// RAII value wrapper around mpfr_t. Storage and conversions only; rounding
// direction is chosen explicitly at every call site that computes with raw().
class bigfloat {
  public:
    bigfloat() : bigfloat(64) {}
    explicit bigfloat(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_nan(v_);
    }
    bigfloat(const bigfloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN); // same precision: exact
    }
    bigfloat(bigfloat&& o) noexcept {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
    }
    bigfloat& operator=(const bigfloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    bigfloat& operator=(bigfloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~bigfloat() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    int cmp(const bigfloat& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const bigfloat& o) const { return cmp(o) < 0; }
    bool operator<=(const bigfloat& o) const { return cmp(o) <= 0; }
    bool operator>(const bigfloat& o) const { return cmp(o) > 0; }
    bool operator>=(const bigfloat& o) const { return cmp(o) >= 0; }
    bool operator==(const bigfloat& o) const { return cmp(o) == 0; }

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

    // "d.ddd...e±xx" with the requested significant digits and rounding.
    std::string str(int digits = 20, mpfr_rnd_t rnd = MPFR_RNDN) const;

    static bigfloat from_ui(unsigned long u, mpfr_prec_t prec);
    static bigfloat from_double(double d, mpfr_prec_t prec);
    // Parse a decimal string, rounding in the given direction.
    static bigfloat from_str(const std::string& s, mpfr_prec_t prec, mpfr_rnd_t rnd);

  private:
    mpfr_t v_;
};

} // namespace balcert
