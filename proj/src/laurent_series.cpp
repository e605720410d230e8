#include "tforms/laurent_series.hpp"

#include <algorithm>
#include <sstream>

#include "tforms/errors.hpp"

namespace tforms {

namespace {

int clamp_cap(long long cap) {
    return static_cast<int>(std::min<long long>(cap, LaurentSeries::kExactCap));
}

}  // namespace

LaurentSeries::LaurentSeries(FieldPtr field, int cap) : field_(std::move(field)), valuation_(cap), cap_(cap) {}

LaurentSeries::LaurentSeries(FieldPtr field, int valuation, const std::vector<FieldElement>& coefficients,
                             int precision)
    : field_(std::move(field)), valuation_(valuation), cap_(clamp_cap(static_cast<long long>(valuation) + precision)) {
    if (precision < 0) throw DomainError("negative series precision");
    const auto known = static_cast<std::size_t>(std::min<long long>(precision, static_cast<long long>(coefficients.size())));
    coeffs_.assign(coefficients.begin(), coefficients.begin() + static_cast<std::ptrdiff_t>(known));
    normalize();
}

LaurentSeries LaurentSeries::exact(FieldPtr field, int valuation, const std::vector<FieldElement>& coefficients) {
    LaurentSeries s(std::move(field), kExactCap);
    s.valuation_ = valuation;
    s.coeffs_ = coefficients;
    s.normalize();
    return s;
}

LaurentSeries LaurentSeries::constant(const FieldElement& c) { return exact(c.field(), 0, {c}); }

LaurentSeries LaurentSeries::monomial(const FieldElement& c, int exponent) { return exact(c.field(), exponent, {c}); }

LaurentSeries LaurentSeries::zero(FieldPtr field, int cap) { return LaurentSeries(std::move(field), clamp_cap(cap)); }

void LaurentSeries::normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        valuation_ = cap_;
        return;
    }
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    valuation_ += static_cast<int>(lead);
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (valuation_ + static_cast<long long>(coeffs_.size()) > cap_) {
        coeffs_.resize(static_cast<std::size_t>(cap_ - valuation_), FieldElement::zero(field_));
        normalize();
    }
}

void LaurentSeries::check_field(const LaurentSeries& o) const {
    if (field_ != o.field_ && !(*field_ == *o.field_)) throw DomainError("series over different fields");
}

FieldElement LaurentSeries::coefficient(int exponent) const {
    if (exponent >= cap_) {
        throw PrecisionError("coefficient of t^" + std::to_string(exponent) + " is beyond the known window (cap " +
                             std::to_string(cap_) + ")");
    }
    const long long i = static_cast<long long>(exponent) - valuation_;
    if (i < 0 || i >= static_cast<long long>(coeffs_.size())) return FieldElement::zero(field_);
    return coeffs_[static_cast<std::size_t>(i)];
}

FieldElement LaurentSeries::leading() const {
    if (is_zero()) throw PrecisionError("leading coefficient of a series with no known nonzero term");
    return coeffs_.front();
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    check_field(o);
    LaurentSeries r(field_, std::min(cap_, o.cap_));
    if (is_zero() && o.is_zero()) return r;
    // a known-zero operand only contributes its cap
    const int lo = is_zero() ? o.valuation_ : o.is_zero() ? valuation_ : std::min(valuation_, o.valuation_);
    const long long end_a = is_zero() ? lo : valuation_ + static_cast<long long>(coeffs_.size());
    const long long end_b = o.is_zero() ? lo : o.valuation_ + static_cast<long long>(o.coeffs_.size());
    const long long top = std::min<long long>(r.cap_, std::max(end_a, end_b));
    r.valuation_ = lo;
    for (long long e = lo; e < top; ++e) {
        FieldElement c = FieldElement::zero(field_);
        const long long i = e - valuation_;
        const long long j = e - o.valuation_;
        if (i >= 0 && i < static_cast<long long>(coeffs_.size())) c += coeffs_[static_cast<std::size_t>(i)];
        if (j >= 0 && j < static_cast<long long>(o.coeffs_.size())) c += o.coeffs_[static_cast<std::size_t>(j)];
        r.coeffs_.push_back(c);
    }
    if (r.coeffs_.empty()) r.valuation_ = r.cap_;
    if (r.valuation_ >= r.cap_) {
        r.coeffs_.clear();
        r.valuation_ = r.cap_;
        return r;
    }
    r.normalize();
    return r;
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    check_field(o);
    // a = t^va (A mod t^(ca-va)), b likewise: ab is known mod t^min(va+cb, vb+ca)
    const int cap = clamp_cap(std::min(static_cast<long long>(valuation_) + o.cap_,
                                       static_cast<long long>(o.valuation_) + cap_));
    LaurentSeries r(field_, cap);
    if (is_zero() || o.is_zero()) return r;
    r.valuation_ = valuation_ + o.valuation_;
    const long long count = std::min<long long>(static_cast<long long>(cap) - r.valuation_,
                                                static_cast<long long>(coeffs_.size() + o.coeffs_.size()) - 1);
    if (count <= 0) {
        r.valuation_ = cap;
        return r;
    }
    r.coeffs_.assign(static_cast<std::size_t>(count), FieldElement::zero(field_));
    for (std::size_t i = 0; i < coeffs_.size() && static_cast<long long>(i) < count; ++i) {
        for (std::size_t j = 0; j < o.coeffs_.size() && static_cast<long long>(i + j) < count; ++j) {
            r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    r.normalize();
    return r;
}

LaurentSeries LaurentSeries::operator*(const FieldElement& c) const {
    LaurentSeries r = *this;
    for (auto& x : r.coeffs_) x *= c;
    r.normalize();
    return r;
}

LaurentSeries LaurentSeries::inverse(int max_terms) const {
    if (is_zero()) throw DomainError("inverse of a series with no known nonzero term");
    if (is_exact() && coeffs_.size() == 1) return monomial(coeffs_.front().inverse(), -valuation_);
    const int n = is_exact() ? max_terms : precision();
    std::vector<FieldElement> d;
    d.reserve(static_cast<std::size_t>(n));
    const FieldElement c0inv = coeffs_.front().inverse();
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            d.push_back(c0inv);
            continue;
        }
        FieldElement acc = FieldElement::zero(field_);
        for (int j = 1; j <= k && j < static_cast<int>(coeffs_.size()); ++j) acc += coeffs_[j] * d[k - j];
        d.push_back(-(c0inv * acc));
    }
    return LaurentSeries(field_, -valuation_, d, n);
}

LaurentSeries LaurentSeries::operator/(const LaurentSeries& o) const {
    if (o.is_exact() && !is_exact()) return *this * o.inverse(precision());
    return *this * o.inverse();
}

LaurentSeries LaurentSeries::shift(int k) const {
    LaurentSeries r = *this;
    if (!is_exact()) r.cap_ = clamp_cap(static_cast<long long>(cap_) + k);
    r.valuation_ = is_zero() ? r.cap_ : valuation_ + k;
    return r;
}

LaurentSeries LaurentSeries::truncate(int cap) const {
    LaurentSeries r = *this;
    r.cap_ = std::min(cap_, cap);
    if (r.valuation_ >= r.cap_) {
        r.coeffs_.clear();
        r.valuation_ = r.cap_;
        return r;
    }
    r.normalize();
    return r;
}

LaurentSeries LaurentSeries::drop_below(int exponent) const {
    LaurentSeries r = *this;
    if (exponent <= valuation_) return r;
    const long long drop = std::min<long long>(static_cast<long long>(exponent) - valuation_,
                                               static_cast<long long>(coeffs_.size()));
    r.coeffs_.erase(r.coeffs_.begin(), r.coeffs_.begin() + static_cast<std::ptrdiff_t>(drop));
    r.valuation_ = valuation_ + static_cast<int>(drop);
    if (r.coeffs_.empty()) r.valuation_ = r.cap_;
    r.normalize();
    return r;
}

LaurentSeries LaurentSeries::keep_below(int exponent) const {
    if (exponent > cap_) {
        throw PrecisionError("cannot keep terms below t^" + std::to_string(exponent) + ": known only below t^" +
                             std::to_string(cap_));
    }
    std::vector<FieldElement> c;
    for (int e = valuation_; e < exponent && !is_zero(); ++e) c.push_back(coefficient(e));
    return exact(field_, is_zero() ? 0 : valuation_, c);
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
    if (!(*field_ == *o.field_)) return false;
    if (cap_ != o.cap_ || valuation_ != o.valuation_ || coeffs_.size() != o.coeffs_.size()) return false;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].index() != o.coeffs_[i].index()) return false;
    }
    return true;
}

std::string LaurentSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const FieldElement& c = coeffs_[i];
        if (c.is_zero()) continue;
        const int e = valuation_ + static_cast<int>(i);
        if (!first) os << " + ";
        first = false;
        const bool unit = c.is_one();
        if (!unit || e == 0) os << (field_->degree() == 1 ? std::to_string(c.index()) : c.to_string());
        if (e != 0) {
            if (!unit) os << '*';
            os << 't';
            if (e != 1) os << '^' << e;
        }
    }
    if (!is_exact()) {
        if (!first) os << " + ";
        os << "O(t^" << cap_ << ')';
    } else if (first) {
        os << '0';
    }
    return os.str();
}

}  // namespace tforms
