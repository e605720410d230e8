#include "tforms/field.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "tforms/errors.hpp"

namespace tforms {

namespace {

int mod_p(long long v, int p) {
    long long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

void trim(std::vector<int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m, coefficients mod p.
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& m, int p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm && !a.empty()) {
        const int lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = mod_p(a[shift + i] - static_cast<long long>(lead) * m[i], p);
        }
        trim(a);
    }
    return a;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<int>& poly, int p) {
    std::vector<int> f = poly;
    trim(f);
    const int n = static_cast<int>(f.size()) - 1;
    if (n < 1) return false;
    if (f.back() != 1) return false;
    for (int d = 1; d <= n / 2; ++d) {
        // enumerate monic polynomials of degree d
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long code = 0; code < count; ++code) {
            std::vector<int> g(d + 1, 0);
            long long c = code;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<int>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

FieldDescriptor::FieldDescriptor(int p, int degree, std::vector<int> modulus, std::string generator)
    : p_(p), degree_(degree), size_(1), modulus_(std::move(modulus)), generator_(std::move(generator)) {
    if (!is_prime(p)) throw DomainError("field characteristic must be prime, got " + std::to_string(p));
    if (degree < 1 || static_cast<int>(modulus_.size()) != degree + 1 || modulus_.back() != 1) {
        throw DomainError("defining polynomial must be monic of the stated degree");
    }
    if (!is_irreducible_mod_p(modulus_, p)) throw DomainError("defining polynomial is reducible");
    for (int i = 0; i < degree; ++i) size_ *= p;

    const auto n = static_cast<std::size_t>(size_);
    add_.resize(n * n);
    mul_.resize(n * n);
    neg_.resize(n);
    inv_.assign(n, 0);
    for (std::uint32_t a = 0; a < n; ++a) {
        const auto ca = coefficients(a);
        std::vector<int> na(degree_);
        for (int i = 0; i < degree_; ++i) na[i] = mod_p(-ca[i], p_);
        neg_[a] = index_of(na);
        for (std::uint32_t b = 0; b < n; ++b) {
            const auto cb = coefficients(b);
            std::vector<int> sum(degree_);
            for (int i = 0; i < degree_; ++i) sum[i] = (ca[i] + cb[i]) % p_;
            add_[a * n + b] = index_of(sum);

            std::vector<int> prod(2 * degree_ - 1, 0);
            for (int i = 0; i < degree_; ++i) {
                for (int j = 0; j < degree_; ++j) {
                    prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
                }
            }
            auto red = poly_rem(prod, modulus_, p_);
            red.resize(degree_, 0);
            mul_[a * n + b] = index_of(red);
        }
    }
    for (std::uint32_t a = 1; a < n; ++a) {
        for (std::uint32_t b = 1; b < n; ++b) {
            if (mul_[a * n + b] == 1) {
                inv_[a] = b;
                break;
            }
        }
        if (inv_[a] == 0) throw ConsistencyError("field table has a non-invertible element");
    }
}

std::string FieldDescriptor::label() const {
    std::ostringstream os;
    os << "F" << size_;
    return os.str();
}

std::uint32_t FieldDescriptor::inv(std::uint32_t a) const {
    if (a == 0) throw DomainError("inverse of zero in " + label());
    return inv_[a];
}

std::vector<int> FieldDescriptor::coefficients(std::uint32_t index) const {
    std::vector<int> c(degree_);
    for (int i = 0; i < degree_; ++i) {
        c[i] = static_cast<int>(index % p_);
        index /= p_;
    }
    return c;
}

std::uint32_t FieldDescriptor::index_of(std::span<const int> coefficients) const {
    if (static_cast<int>(coefficients.size()) > degree_) {
        throw DomainError("coefficient vector longer than field degree");
    }
    std::uint32_t idx = 0;
    for (std::size_t i = coefficients.size(); i-- > 0;) {
        idx = idx * p_ + static_cast<std::uint32_t>(mod_p(coefficients[i], p_));
    }
    return idx;
}

FieldPtr build_field(int p, int k) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, FieldPtr> cache;

    if (!is_prime(p)) throw DomainError("build_field: " + std::to_string(p) + " is not prime");
    std::vector<int> modulus;
    std::string gen;
    if (k == 1 && (p == 2 || p == 3)) {
        modulus = {0, 1};
        gen = "1";
    } else if (p == 2 && k == 2) {
        modulus = {1, 1, 1};
        gen = "a";
    } else if (p == 3 && k == 2) {
        modulus = {1, 0, 1};
        gen = "b";
    } else if (p == 2 && k == 4) {
        modulus = {1, 1, 0, 0, 1};
        gen = "g";
    } else {
        throw DomainError("build_field: unsupported (p,k) = (" + std::to_string(p) + "," +
                          std::to_string(k) + ")");
    }

    std::lock_guard lock(mutex);
    auto& slot = cache[{p, k}];
    if (!slot) slot = std::make_shared<const FieldDescriptor>(p, k, modulus, gen);
    return slot;
}

FieldElement::FieldElement(FieldPtr field, std::uint32_t index) : field_(std::move(field)), index_(index) {
    if (!field_) throw DomainError("field element without a field");
    if (index_ >= static_cast<std::uint32_t>(field_->size())) throw DomainError("field element index out of range");
}

FieldElement FieldElement::one(const FieldPtr& field) { return {field, 1}; }

FieldElement FieldElement::from_int(const FieldPtr& field, long long value) {
    return {field, static_cast<std::uint32_t>(mod_p(value, field->characteristic()))};
}

FieldElement FieldElement::from_coefficients(const FieldPtr& field, std::span<const int> coefficients) {
    return {field, field->index_of(coefficients)};
}

FieldElement FieldElement::generator(const FieldPtr& field) {
    if (field->degree() == 1) return zero(field);
    return {field, static_cast<std::uint32_t>(field->characteristic())};
}

std::vector<FieldElement> FieldElement::all(const FieldPtr& field) {
    std::vector<FieldElement> out;
    out.reserve(field->size());
    for (int i = 0; i < field->size(); ++i) out.emplace_back(field, static_cast<std::uint32_t>(i));
    return out;
}

bool FieldElement::is_one() const { return index_ == 1; }

void FieldElement::check_same_field(const FieldElement& o) const {
    if (field_ != o.field_ && !(*field_ == *o.field_)) {
        throw DomainError("mixed-field arithmetic: " + field_->label() + " vs " + o.field_->label());
    }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same_field(o);
    return {field_, field_->add(index_, o.index_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same_field(o);
    return {field_, field_->add(index_, field_->neg(o.index_))};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same_field(o);
    return {field_, field_->mul(index_, o.index_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    check_same_field(o);
    return {field_, field_->mul(index_, field_->inv(o.index_))};
}

FieldElement FieldElement::operator-() const { return {field_, field_->neg(index_)}; }

FieldElement FieldElement::inverse() const { return {field_, field_->inv(index_)}; }

FieldElement FieldElement::pow(std::uint64_t e) const {
    FieldElement result = one(field_);
    FieldElement base = *this;
    while (e > 0) {
        if (e & 1U) result = result * base;
        base = base * base;
        e >>= 1U;
    }
    return result;
}

int FieldElement::order() const {
    if (is_zero()) throw DomainError("zero has no multiplicative order");
    FieldElement x = *this;
    int n = 1;
    while (!x.is_one()) {
        x = x * *this;
        ++n;
    }
    return n;
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    os << '(';
    const auto c = coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ',';
        os << c[i];
    }
    os << ')';
    return os.str();
}

bool FieldElement::operator==(const FieldElement& o) const {
    check_same_field(o);
    return index_ == o.index_;
}

std::strong_ordering FieldElement::operator<=>(const FieldElement& o) const {
    check_same_field(o);
    return index_ <=> o.index_;
}

FieldEmbedding::FieldEmbedding(FieldPtr sub, FieldPtr super)
    : sub_(std::move(sub)), super_(std::move(super)), root_(FieldElement::zero(super_)) {
    if (sub_->characteristic() != super_->characteristic() || super_->degree() % sub_->degree() != 0) {
        throw DomainError("no embedding " + sub_->label() + " -> " + super_->label());
    }
    const auto& m = sub_->modulus();
    bool found = false;
    for (const auto& r : FieldElement::all(super_)) {
        FieldElement acc = FieldElement::zero(super_);
        for (std::size_t i = m.size(); i-- > 0;) acc = acc * r + FieldElement::from_int(super_, m[i]);
        if (acc.is_zero()) {
            root_ = r;
            found = true;
            break;
        }
    }
    if (!found) throw ConsistencyError("defining polynomial of " + sub_->label() + " has no root in " + super_->label());

    image_.resize(sub_->size());
    for (const auto& x : FieldElement::all(sub_)) {
        const auto c = x.coefficients();
        FieldElement acc = FieldElement::zero(super_);
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * root_ + FieldElement::from_int(super_, c[i]);
        image_[x.index()] = acc.index();
    }
}

FieldElement FieldEmbedding::operator()(const FieldElement& x) const {
    if (x.field() != sub_ && !(*x.field() == *sub_)) throw DomainError("embedding applied to foreign element");
    return {super_, image_[x.index()]};
}

std::optional<FieldElement> FieldEmbedding::preimage(const FieldElement& x) const {
    for (std::size_t i = 0; i < image_.size(); ++i) {
        if (image_[i] == x.index()) return FieldElement(sub_, static_cast<std::uint32_t>(i));
    }
    return std::nullopt;
}

}  // namespace tforms
