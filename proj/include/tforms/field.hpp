#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tforms {

class FieldDescriptor;
using FieldPtr = std::shared_ptr<const FieldDescriptor>;

/// A finite field F_{p^k} = F_p[g]/(m(g)) with full operation tables.
///
/// Elements are encoded as integers 0..p^k-1: the coefficient vector
/// (c_0, ..., c_{k-1}) of c_0 + c_1 g + ... maps to sum c_i p^i. For a
/// prime field the modulus is the polynomial x, so g = 0 and the index
/// is the residue itself.
class FieldDescriptor {
public:
    FieldDescriptor(int p, int degree, std::vector<int> modulus, std::string generator);

    int characteristic() const noexcept { return p_; }
    int degree() const noexcept { return degree_; }
    int size() const noexcept { return size_; }
    /// Monic defining polynomial over F_p, ascending coefficients.
    const std::vector<int>& modulus() const noexcept { return modulus_; }
    const std::string& generator() const noexcept { return generator_; }
    std::string label() const;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * size_ + b]; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * size_ + b]; }
    std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
    /// Throws DomainError for a == 0.
    std::uint32_t inv(std::uint32_t a) const;

    std::vector<int> coefficients(std::uint32_t index) const;
    std::uint32_t index_of(std::span<const int> coefficients) const;

    bool operator==(const FieldDescriptor& other) const noexcept {
        return p_ == other.p_ && degree_ == other.degree_ && modulus_ == other.modulus_;
    }

private:
    int p_;
    int degree_;
    int size_;
    std::vector<int> modulus_;
    std::string generator_;
    std::vector<std::uint32_t> add_;
    std::vector<std::uint32_t> mul_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint32_t> inv_;
};

/// True when the monic polynomial (ascending coefficients mod p) has no monic
/// factor of degree 1..deg/2. Exhaustive; intended for the tiny fields here.
bool is_irreducible_mod_p(const std::vector<int>& poly, int p);

/// Builds F_{p^k} from the fixed table:
///   (2,1) x, (3,1) x, (2,2) a^2+a+1, (3,2) b^2+1, (2,4) g^4+g+1.
/// Instances are cached; equal arguments give the same pointer.
FieldPtr build_field(int p, int k);

class FieldElement {
public:
    /// Detached placeholder with no field; only good for assignment.
    FieldElement() = default;
    FieldElement(FieldPtr field, std::uint32_t index);

    static FieldElement zero(const FieldPtr& field) { return {field, 0}; }
    static FieldElement one(const FieldPtr& field);
    /// Image of an integer under Z -> F_p -> F.
    static FieldElement from_int(const FieldPtr& field, long long value);
    static FieldElement from_coefficients(const FieldPtr& field, std::span<const int> coefficients);
    /// The class of g in F_p[g]/(m).
    static FieldElement generator(const FieldPtr& field);
    /// All elements in index order.
    static std::vector<FieldElement> all(const FieldPtr& field);

    const FieldPtr& field() const noexcept { return field_; }
    std::uint32_t index() const noexcept { return index_; }
    std::vector<int> coefficients() const { return field_->coefficients(index_); }
    bool is_zero() const noexcept { return index_ == 0; }
    bool is_one() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement inverse() const;
    FieldElement pow(std::uint64_t e) const;
    /// Multiplicative order; DomainError for zero.
    int order() const;

    /// Canonical text: coefficient tuple in ascending generator powers, e.g. "(1,1)".
    std::string to_string() const;

    bool operator==(const FieldElement& o) const;
    std::strong_ordering operator<=>(const FieldElement& o) const;

private:
    void check_same_field(const FieldElement& o) const;

    FieldPtr field_;
    std::uint32_t index_ = 0;
};

/// Field homomorphism sub -> super determined by sending the generator of sub
/// to the smallest-index root of its modulus in super.
class FieldEmbedding {
public:
    FieldEmbedding(FieldPtr sub, FieldPtr super);

    const FieldPtr& source() const noexcept { return sub_; }
    const FieldPtr& target() const noexcept { return super_; }
    /// Image of the generator of the source.
    const FieldElement& generator_image() const noexcept { return root_; }

    FieldElement operator()(const FieldElement& x) const;
    /// Preimage when x lies in the image.
    std::optional<FieldElement> preimage(const FieldElement& x) const;
    bool contains(const FieldElement& x) const { return preimage(x).has_value(); }

private:
    FieldPtr sub_;
    FieldPtr super_;
    FieldElement root_;
    std::vector<std::uint32_t> image_;
};

}  // namespace tforms
