#pragma once

// Elements of Q(p) and of a quadratic extension Q(p)[w]/(w^2 - D(p)).

#include "param_poly.hpp"

#include <memory>

namespace rspb {

struct Extension {
    ParamPoly disc;         // D(p), square-free
    std::string name = "w";
};

using ExtensionPtr = std::shared_ptr<const Extension>;

inline ExtensionPtr make_extension(ParamPoly disc, std::string name = "w") {
    if (disc.degree() < 1) throw std::invalid_argument("extension discriminant must be nonconstant");
    if (gcd(disc, disc.derivative()).degree() > 0) throw std::invalid_argument("extension discriminant is not square-free");
    return std::make_shared<const Extension>(Extension{std::move(disc), std::move(name)});
}

class ParamElem {
public:
    ParamElem() = default;
    ParamElem(long v) : base_(v) {}
    ParamElem(const Rational& v) : base_(v) {}
    ParamElem(const ParamPoly& v) : base_(v) {}
    ParamElem(const ParamFrac& v) : base_(v) {}
    ParamElem(ParamFrac base, ParamFrac ext, ExtensionPtr e) : base_(std::move(base)), ext_(std::move(ext)), e_(std::move(e)) {
        if (!ext_.is_zero() && !e_) throw std::invalid_argument("ParamElem: w-part without extension");
    }

    static ParamElem param() { return ParamFrac::variable(); }
    static ParamElem w(const ExtensionPtr& e) { return ParamElem(ParamFrac(), ParamFrac(1), e); }

    const ParamFrac& base() const { return base_; }
    const ParamFrac& ext_part() const { return ext_; }
    const ExtensionPtr& extension() const { return e_; }
    bool has_ext() const { return !ext_.is_zero(); }

    bool is_zero() const { return base_.is_zero() && ext_.is_zero(); }
    bool is_one() const { return !has_ext() && base_ == ParamFrac(1); }
    bool is_rational() const { return !has_ext() && base_.is_rational(); }
    Rational as_rational() const {
        if (has_ext()) throw std::domain_error("ParamElem: not a rational constant");
        return base_.as_rational();
    }

    friend bool operator==(const ParamElem& a, const ParamElem& b) {
        if (a.base_ != b.base_ || a.ext_ != b.ext_) return false;
        if (a.ext_.is_zero()) return true;
        return same_ext(a.e_, b.e_);
    }
    friend bool operator!=(const ParamElem& a, const ParamElem& b) { return !(a == b); }

    ParamElem operator-() const { return ParamElem(-base_, -ext_, e_); }

    friend ParamElem operator+(const ParamElem& a, const ParamElem& b) {
        return ParamElem(a.base_ + b.base_, a.ext_ + b.ext_, common(a, b));
    }
    friend ParamElem operator-(const ParamElem& a, const ParamElem& b) {
        return ParamElem(a.base_ - b.base_, a.ext_ - b.ext_, common(a, b));
    }
    friend ParamElem operator*(const ParamElem& a, const ParamElem& b) {
        if (!a.has_ext() && !b.has_ext()) return ParamElem(a.base_ * b.base_, ParamFrac(), common(a, b));
        ExtensionPtr e = common(a, b);
        if (!a.has_ext()) return ParamElem(a.base_ * b.base_, a.base_ * b.ext_, e);
        if (!b.has_ext()) return ParamElem(a.base_ * b.base_, a.ext_ * b.base_, e);
        ParamFrac d(e->disc);
        return ParamElem(a.base_ * b.base_ + a.ext_ * b.ext_ * d, a.base_ * b.ext_ + a.ext_ * b.base_, e);
    }
    ParamElem conjugate() const { return ParamElem(base_, -ext_, e_); }
    // (a + bw)(a - bw) = a^2 - b^2 D
    ParamFrac norm() const {
        if (!has_ext()) return base_ * base_;
        return base_ * base_ - ext_ * ext_ * ParamFrac(e_->disc);
    }
    ParamElem inverse() const {
        if (is_zero()) throw std::domain_error("ParamElem: division by zero");
        if (!has_ext()) return ParamElem(base_.inverse(), ParamFrac(), e_);
        ParamFrac n = norm().inverse();
        return ParamElem(base_ * n, -ext_ * n, e_);
    }
    friend ParamElem operator/(const ParamElem& a, const ParamElem& b) {
        if (!b.has_ext()) {
            ParamFrac inv = b.base_.inverse();
            return ParamElem(a.base_ * inv, a.ext_ * inv, common(a, b));
        }
        return a * b.inverse();
    }

    ParamElem& operator+=(const ParamElem& o) { return *this = *this + o; }
    ParamElem& operator-=(const ParamElem& o) { return *this = *this - o; }
    ParamElem& operator*=(const ParamElem& o) { return *this = *this * o; }
    ParamElem& operator/=(const ParamElem& o) { return *this = *this / o; }

    ParamElem pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        ParamElem r(1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    // d/dp, with w' = D'/(2w) = D' w / (2D).
    ParamElem derivative() const {
        if (!has_ext()) return ParamElem(base_.derivative(), ParamFrac(), e_);
        ParamFrac dd(e_->disc.derivative());
        ParamFrac d(e_->disc);
        return ParamElem(base_.derivative(), ext_.derivative() + ext_ * dd / (ParamFrac(2) * d), e_);
    }

    // Keeps the extension pointer only when it is used.
    ParamElem stripped() const { return has_ext() ? *this : ParamElem(base_); }

    static bool same_ext(const ExtensionPtr& a, const ExtensionPtr& b) {
        if (a == b) return true;
        if (!a || !b) return false;
        return a->disc == b->disc;
    }

private:
    static ExtensionPtr common(const ParamElem& a, const ParamElem& b) {
        if (!a.e_) return b.e_;
        if (!b.e_) return a.e_;
        if (!same_ext(a.e_, b.e_)) throw std::invalid_argument("ParamElem: mixing different quadratic extensions");
        return a.e_;
    }

    ParamFrac base_;
    ParamFrac ext_;
    ExtensionPtr e_;
};

// Evaluate a Q-polynomial in p at an element of the (possibly extended) field.
inline ParamElem evaluate_at(const ParamPoly& f, const ParamElem& v) {
    ParamElem acc;
    for (int i = f.degree(); i >= 0; --i) acc = acc * v + ParamElem(f.coeff(i));
    return acc;
}

// Substitute p -> r in an element of Q(p) or of its extension. For the
// extended case the extension must survive the substitution, so only
// extension-free inputs are accepted.
inline ParamElem substitute_param(const ParamElem& e, const ParamElem& r) {
    if (e.has_ext()) throw std::invalid_argument("substitute_param: input already involves w");
    ParamElem d = evaluate_at(e.base().denominator(), r);
    if (d.is_zero()) throw std::domain_error("substitute_param: denominator vanishes identically");
    return evaluate_at(e.base().numerator(), r) / d;
}

// Numeric value at p = v with w given explicitly (for spot checks).
inline Rational evaluate_rational(const ParamElem& e, const Rational& v, const Rational& wval = 0) {
    Rational r = e.base().evaluate(v);
    if (e.has_ext()) r += e.ext_part().evaluate(v) * wval;
    return r;
}

inline double evaluate_double(const ParamElem& e, double v, double wval = 0) {
    auto ev = [v](const ParamPoly& p) {
        double acc = 0;
        for (int i = p.degree(); i >= 0; --i) acc = acc * v + p.coeff(i).get_d();
        return acc;
    };
    double r = ev(e.base().numerator()) / ev(e.base().denominator());
    if (e.has_ext()) r += ev(e.ext_part().numerator()) / ev(e.ext_part().denominator()) * wval;
    return r;
}

}  // namespace rspb
