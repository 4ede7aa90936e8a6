// Exact arithmetic in finite stages of Q/Z.
//
// A generator chain k_0,...,k_J (all >= 2) fixes nested cyclic subgroups
// Gamma_j of order k_0*...*k_j, generated by gamma_j = 1/(k_0...k_j) mod 1.
// Every element of Gamma_J has a unique mixed-radix digit expansion
//   gamma = sum_j a_j * gamma_j,  0 <= a_j < k_j,
// and splits as a head in Gamma_j times a tail supported on higher levels.
// Multiplying two tails produces at most a single unit of carry into level
// j; that carry drives the vertex action of the cover graph.
//
// Everything here is exact big-integer rational arithmetic; no floats.
#ifndef SNOWCONE_QZ_HPP
#define SNOWCONE_QZ_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace snowcone {

using BigInt = boost::multiprecision::cpp_int;

// Reduced fraction in [0,1) under addition mod 1; identity is 0/1.
class QZ {
public:
    QZ() : num_(0), den_(1) {}
    QZ(BigInt num, BigInt den) {
        if (den <= 0) throw std::invalid_argument("QZ: denominator must be positive");
        num %= den;
        if (num < 0) num += den;
        BigInt g = boost::multiprecision::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_identity() const { return num_ == 0; }

    // Order in Q/Z: the reduced denominator.
    BigInt order() const { return den_; }

    friend QZ operator+(const QZ& a, const QZ& b) {
        return QZ(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QZ operator-(const QZ& a, const QZ& b) {
        return QZ(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    QZ inverse() const { return QZ(den_ - num_, den_); }

    QZ pow(const BigInt& e) const {
        BigInt e2 = e % den_;
        if (e2 < 0) e2 += den_;
        return QZ(num_ * e2, den_);
    }

    friend bool operator==(const QZ& a, const QZ& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const QZ& a, const QZ& b) { return !(a == b); }
    friend bool operator<(const QZ& a, const QZ& b) { return a.num_ * b.den_ < b.num_ * a.den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const { return num_.str() + "/" + den_.str(); }

private:
    BigInt num_;
    BigInt den_;
};

class GeneratorChain {
public:
    explicit GeneratorChain(std::vector<BigInt> ks) : ks_(std::move(ks)) {
        if (ks_.empty()) throw std::invalid_argument("GeneratorChain: empty");
        for (const BigInt& k : ks_)
            if (k < 2) throw std::invalid_argument("GeneratorChain: every k_j must be >= 2");
        cum_.reserve(ks_.size());
        BigInt p = 1;
        for (const BigInt& k : ks_) {
            p *= k;
            cum_.push_back(p);
        }
    }
    static GeneratorChain from_ints(const std::vector<long long>& ks) {
        std::vector<BigInt> v(ks.begin(), ks.end());
        return GeneratorChain(std::move(v));
    }

    int top_level() const { return static_cast<int>(ks_.size()) - 1; }
    const BigInt& k(int j) const { return ks_.at(check(j)); }
    // k_{<=j} = k_0 * ... * k_j
    const BigInt& cumulative(int j) const { return cum_.at(check(j)); }
    const BigInt& total_order() const { return cum_.back(); }

    // gamma_j = 1/k_{<=j}
    QZ gamma(int j) const { return QZ(1, cumulative(j)); }

    const std::vector<BigInt>& ks() const { return ks_; }

private:
    int check(int j) const {
        if (j < 0 || j > top_level()) throw std::out_of_range("GeneratorChain: level out of range");
        return j;
    }
    std::vector<BigInt> ks_;
    std::vector<BigInt> cum_;
};

// Digits a_j for levels lo..hi (inclusive), little-endian by level:
// digits()[i] is the digit at level lo + i.
class DigitVector {
public:
    DigitVector() : lo_(0), hi_(-1) {}
    DigitVector(int lo, int hi, std::vector<BigInt> digits) : lo_(lo), hi_(hi), digits_(std::move(digits)) {
        if (hi_ - lo_ + 1 != static_cast<int>(digits_.size()) && !(hi_ < lo_ && digits_.empty()))
            throw std::invalid_argument("DigitVector: level range mismatch");
    }

    int level_lo() const { return lo_; }
    int level_hi() const { return hi_; }
    bool empty() const { return digits_.empty(); }
    const std::vector<BigInt>& digits() const { return digits_; }
    const BigInt& digit_at_level(int j) const {
        if (j < lo_ || j > hi_) throw std::out_of_range("DigitVector: level out of range");
        return digits_[static_cast<size_t>(j - lo_)];
    }
    bool is_zero() const {
        for (const BigInt& d : digits_)
            if (d != 0) return false;
        return true;
    }

    void validate(const GeneratorChain& chain) const {
        if (empty()) return;
        if (lo_ < 0 || hi_ > chain.top_level())
            throw std::out_of_range("DigitVector: levels outside chain");
        for (int j = lo_; j <= hi_; ++j) {
            const BigInt& d = digit_at_level(j);
            if (d < 0 || d >= chain.k(j)) throw std::invalid_argument("DigitVector: digit out of radix");
        }
    }

    // Value sum_j a_j / k_{<=j} mod 1.
    QZ recompose(const GeneratorChain& chain) const {
        validate(chain);
        QZ v;
        for (int j = lo_; j <= hi_; ++j) v = v + QZ(digit_at_level(j), chain.cumulative(j));
        return v;
    }

    friend bool operator==(const DigitVector& a, const DigitVector& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.digits_ == b.digits_;
    }

private:
    int lo_;
    int hi_;
    std::vector<BigInt> digits_;
};

// |Gamma_j| = k_{<=j}; also the sanity identity gamma_j^{k_j} = gamma_{j-1}.
inline BigInt chain_subgroup_order(const GeneratorChain& chain, int j) {
    return chain.cumulative(j);
}

inline bool element_of(const QZ& g, const GeneratorChain& chain) {
    return chain.total_order() % g.den() == 0;
}

// Unique digits of g over levels 0..J.
inline DigitVector decompose(const QZ& g, const GeneratorChain& chain) {
    if (!element_of(g, chain))
        throw std::invalid_argument("decompose: element not in the truncated subgroup");
    const int J = chain.top_level();
    // N = g * k_{<=J}; the level-j place value is prod_{i>j} k_i.
    BigInt n = g.num() * (chain.total_order() / g.den());
    std::vector<BigInt> digits(static_cast<size_t>(J) + 1);
    for (int j = 0; j <= J; ++j) {
        BigInt place = chain.total_order() / chain.cumulative(j);
        digits[static_cast<size_t>(j)] = n / place;
        n %= place;
    }
    return DigitVector(0, J, std::move(digits));
}

struct SplitResult {
    QZ head;           // element of Gamma_j
    DigitVector tail;  // digits on levels j+1..J
};

// Set splitting Gamma_J = Gamma_j x (tails above j).
inline SplitResult split_at(const QZ& g, const GeneratorChain& chain, int j) {
    const int J = chain.top_level();
    if (j < 0 || j > J) throw std::out_of_range("split_at: level out of range");
    DigitVector full = decompose(g, chain);
    QZ head;
    for (int i = 0; i <= j; ++i) head = head + QZ(full.digit_at_level(i), chain.cumulative(i));
    std::vector<BigInt> tail(full.digits().begin() + j + 1, full.digits().end());
    return SplitResult{head, DigitVector(j + 1, J, std::move(tail))};
}

struct TailProduct {
    bool carry = false;  // c_j: the unit of gamma_j produced by the product
    DigitVector tail;    // digits on levels j+1..J
};

// Product of two tails supported above level j, decomposed as
// gamma_j^{c_j} * (tail above j); c_j is always 0 or 1 because each tail
// value is below 1/k_{<=j}.  Schoolbook mixed-radix addition, carrying
// from high levels toward low.
inline TailProduct tail_product_with_carry(const DigitVector& t1, const DigitVector& t2,
                                           const GeneratorChain& chain, int j) {
    const int J = chain.top_level();
    if (j < -1 || j > J) throw std::out_of_range("tail_product_with_carry: level out of range");
    t1.validate(chain);
    t2.validate(chain);
    if ((!t1.empty() && t1.level_lo() <= j) || (!t2.empty() && t2.level_lo() <= j))
        throw std::invalid_argument("tail_product_with_carry: tail supported at or below split level");
    std::vector<BigInt> out(static_cast<size_t>(J - j));
    BigInt carry = 0;
    for (int lev = J; lev > j; --lev) {
        BigInt s = carry;
        if (!t1.empty() && lev >= t1.level_lo() && lev <= t1.level_hi()) s += t1.digit_at_level(lev);
        if (!t2.empty() && lev >= t2.level_lo() && lev <= t2.level_hi()) s += t2.digit_at_level(lev);
        out[static_cast<size_t>(lev - j - 1)] = s % chain.k(lev);
        carry = s / chain.k(lev);
    }
    if (carry > 1) throw std::logic_error("tail_product_with_carry: carry exceeded 1");
    return TailProduct{carry == 1, DigitVector(j + 1, J, std::move(out))};
}

}  // namespace snowcone

#endif
