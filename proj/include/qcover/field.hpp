#pragma once

// Exact arithmetic for GF(q), q = p^e, and for extension fields GF(q^m)
// built on top of GF(q) with a polynomial basis.
//
// Element encoding: an element is an integer code in [0, q) whose base-p
// digits are the coefficients of the representing polynomial (digit i =
// coefficient of x^i).  The modulus is the monic irreducible polynomial of
// the requested degree with the smallest coefficient code, so a field is
// fully determined by (p, e).
//
// Multiplication and inversion run on log/exp tables when q <= 4096,
// schoolbook polynomial arithmetic otherwise.  All objects are immutable
// after construction and safe to share between threads.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcover {

using Elem = std::uint16_t;

namespace detail {

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace detail

class Field {
  public:
    static constexpr long long kTableLimit = 1 << 12;

    static Field make(int p, int e) {
        if (!detail::is_prime(p)) throw std::invalid_argument("Field: p must be prime");
        if (e < 1) throw std::invalid_argument("Field: e must be >= 1");
        long long q = 1;
        for (int i = 0; i < e; ++i) {
            q *= p;
            if (q > (1 << 16)) throw std::invalid_argument("Field: p^e too large");
        }
        Field F;
        F.p_ = p;
        F.e_ = e;
        F.q_ = static_cast<int>(q);
        F.modulus_ = least_irreducible(p, e);
        if (F.q_ <= kTableLimit) F.build_tables();
        return F;
    }

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }

    // Monic modulus, ascending-degree coefficients, length e+1.
    const std::vector<Elem>& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const {
        if (p_ == 2) return a ^ b;
        if (e_ == 1) {
            int s = a + b;
            return static_cast<Elem>(s >= q_ ? s - q_ : s);
        }
        int out = 0, mul = 1;
        int x = a, y = b;
        for (int i = 0; i < e_; ++i) {
            out += ((x % p_ + y % p_) % p_) * mul;
            x /= p_;
            y /= p_;
            mul *= p_;
        }
        return static_cast<Elem>(out);
    }

    Elem neg(Elem a) const {
        if (p_ == 2) return a;
        if (e_ == 1) return static_cast<Elem>(a == 0 ? 0 : q_ - a);
        int out = 0, mul = 1;
        int x = a;
        for (int i = 0; i < e_; ++i) {
            int d = x % p_;
            out += (d == 0 ? 0 : p_ - d) * mul;
            x /= p_;
            mul *= p_;
        }
        return static_cast<Elem>(out);
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        if (!log_.empty()) {
            int s = log_[a] + log_[b];
            if (s >= q_ - 1) s -= q_ - 1;
            return exp_[s];
        }
        return mul_schoolbook(a, b);
    }

    Elem inv(Elem a) const {
        if (a == 0) throw std::invalid_argument("Field: inversion of zero");
        if (!log_.empty()) {
            int s = log_[a] == 0 ? 0 : q_ - 1 - log_[a];
            return exp_[s];
        }
        return pow(a, q_ - 2); // a^(q-2)
    }

    Elem pow(Elem a, long long k) const {
        if (k < 0) throw std::invalid_argument("Field: negative exponent");
        if (a == 0) return k == 0 ? 1 : 0;
        if (!log_.empty()) {
            long long s = (static_cast<long long>(log_[a]) * (k % (q_ - 1))) % (q_ - 1);
            return exp_[s];
        }
        Elem r = 1, base = a;
        while (k) {
            if (k & 1) r = mul(r, base);
            base = mul(base, base);
            k >>= 1;
        }
        return r;
    }

    // Coefficient of x^i in the representing polynomial of a.
    int digit(Elem a, int i) const {
        int x = a;
        for (int j = 0; j < i; ++j) x /= p_;
        return x % p_;
    }

  private:
    Field() = default;

    int p_ = 0, e_ = 0, q_ = 0;
    std::vector<Elem> modulus_;
    std::vector<Elem> log_, exp_;

    static std::vector<Elem> least_irreducible(int p, int e) {
        if (e == 1) return {0, 1}; // x
        long long pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        for (long long low = 0; low < pe; ++low) {
            std::vector<Elem> f(e + 1);
            long long x = low;
            for (int i = 0; i < e; ++i) {
                f[i] = static_cast<Elem>(x % p);
                x /= p;
            }
            f[e] = 1;
            if (poly_irreducible_mod_p(f, p)) return f;
        }
        throw std::logic_error("Field: no irreducible polynomial found");
    }

    // Irreducibility over GF(p) by trial division with all monic divisors of
    // degree <= deg/2.  Plenty fast for e <= 12 at desk scale.
    static bool poly_irreducible_mod_p(const std::vector<Elem>& f, int p) {
        int deg = static_cast<int>(f.size()) - 1;
        if (f[0] == 0) return deg == 1; // divisible by x
        for (int d = 1; 2 * d <= deg; ++d) {
            long long count = 1;
            for (int i = 0; i < d; ++i) count *= p;
            for (long long low = 0; low < count; ++low) {
                std::vector<int> g(d + 1);
                long long x = low;
                for (int i = 0; i < d; ++i) {
                    g[i] = static_cast<int>(x % p);
                    x /= p;
                }
                g[d] = 1;
                // remainder of f mod g
                std::vector<int> r(f.begin(), f.end());
                for (int i = deg; i >= d; --i) {
                    int c = r[i] % p;
                    if (c == 0) continue;
                    for (int j = 0; j <= d; ++j) {
                        int idx = i - d + j;
                        r[idx] = ((r[idx] - c * g[j]) % p + p * p) % p;
                    }
                }
                bool zero = true;
                for (int i = 0; i < d; ++i)
                    if (r[i] % p != 0) { zero = false; break; }
                if (zero) return false;
            }
        }
        return true;
    }

    Elem mul_schoolbook(Elem a, Elem b) const {
        // digit convolution then reduction by the modulus
        std::vector<int> da(e_), db(e_);
        int x = a, y = b;
        for (int i = 0; i < e_; ++i) { da[i] = x % p_; x /= p_; }
        for (int i = 0; i < e_; ++i) { db[i] = y % p_; y /= p_; }
        std::vector<int> prod(2 * e_ - 1, 0);
        for (int i = 0; i < e_; ++i) {
            if (da[i] == 0) continue;
            for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        }
        for (int i = 2 * e_ - 2; i >= e_; --i) {
            int c = prod[i];
            if (c == 0) continue;
            prod[i] = 0;
            for (int j = 0; j < e_; ++j) {
                int idx = i - e_ + j;
                prod[idx] = ((prod[idx] - c * modulus_[j]) % p_ + p_) % p_;
            }
        }
        int out = 0, mul = 1;
        for (int i = 0; i < e_; ++i) {
            out += prod[i] * mul;
            mul *= p_;
        }
        return static_cast<Elem>(out);
    }

    void build_tables() {
        exp_.assign(q_, 0);
        log_.assign(q_, 0);
        for (int g = 2; g < q_; ++g) {
            Elem x = 1;
            int order = 0;
            do {
                x = mul_schoolbook(x, static_cast<Elem>(g));
                ++order;
            } while (x != 1);
            if (order == q_ - 1) {
                Elem y = 1;
                for (int i = 0; i < q_ - 1; ++i) {
                    exp_[i] = y;
                    log_[y] = i;
                    y = mul_schoolbook(y, static_cast<Elem>(g));
                }
                return;
            }
        }
        if (q_ == 2) { // GF(2) has the empty generator loop above
            exp_ = {1};
            log_ = {0, 0};
            return;
        }
        throw std::logic_error("Field: no generator found");
    }
};

// GF(q^m) built over a base GF(q).  Elements are integer codes in [0, q^m)
// whose base-q digits are the coordinates in the polynomial basis
// 1, x, ..., x^{m-1}.  expand/compress convert between codes and coordinate
// vectors over the base field.
class ExtField {
  public:
    static ExtField make(const Field& base, int m) {
        if (m < 1) throw std::invalid_argument("ExtField: m must be >= 1");
        long long Q = 1;
        for (int i = 0; i < m; ++i) {
            Q *= base.q();
            if (Q > (1LL << 24)) throw std::invalid_argument("ExtField: q^m too large");
        }
        ExtField E;
        E.base_ = base;
        E.m_ = m;
        E.Q_ = Q;
        E.modulus_ = least_irreducible(base, m);
        if (Q <= Field::kTableLimit) E.build_tables();
        return E;
    }

    const Field& base() const { return base_; }
    int m() const { return m_; }
    long long order() const { return Q_; }
    const std::vector<Elem>& modulus() const { return modulus_; }

    long long add(long long a, long long b) const {
        long long out = 0, mul = 1;
        for (int i = 0; i < m_; ++i) {
            out += static_cast<long long>(base_.add(static_cast<Elem>(a % base_.q()),
                                                    static_cast<Elem>(b % base_.q()))) * mul;
            a /= base_.q();
            b /= base_.q();
            mul *= base_.q();
        }
        return out;
    }

    long long mul(long long a, long long b) const {
        if (a == 0 || b == 0) return 0;
        if (!log_.empty()) {
            long long s = log_[a] + log_[b];
            if (s >= Q_ - 1) s -= Q_ - 1;
            return exp_[s];
        }
        return mul_schoolbook(a, b);
    }

    long long pow(long long a, long long k) const {
        if (a == 0) return k == 0 ? 1 : 0;
        if (!log_.empty()) {
            long long s = (log_[a] % (Q_ - 1)) * (k % (Q_ - 1)) % (Q_ - 1);
            return exp_[s];
        }
        long long r = 1, x = a;
        while (k) {
            if (k & 1) r = mul(r, x);
            x = mul(x, x);
            k >>= 1;
        }
        return r;
    }

    long long frobenius(long long a) const { return pow(a, base_.q()); }

    // Base-field scalar action.
    long long scale(Elem c, long long a) const {
        long long out = 0, mul = 1;
        for (int i = 0; i < m_; ++i) {
            out += static_cast<long long>(base_.mul(c, static_cast<Elem>(a % base_.q()))) * mul;
            a /= base_.q();
            mul *= base_.q();
        }
        return out;
    }

    std::vector<Elem> expand(long long a) const {
        std::vector<Elem> v(m_);
        for (int i = 0; i < m_; ++i) {
            v[i] = static_cast<Elem>(a % base_.q());
            a /= base_.q();
        }
        return v;
    }

    long long compress(const std::vector<Elem>& v) const {
        if (static_cast<int>(v.size()) != m_) throw std::invalid_argument("ExtField: bad vector size");
        long long out = 0;
        for (int i = m_ - 1; i >= 0; --i) out = out * base_.q() + v[i];
        return out;
    }

    // Code of the basis element x^i.
    long long basis(int i) const {
        long long out = 1;
        for (int j = 0; j < i; ++j) out *= base_.q();
        return out;
    }

  private:
    ExtField() = default;

    Field base_ = Field::make(2, 1);
    int m_ = 0;
    long long Q_ = 0;
    std::vector<Elem> modulus_; // over base, ascending, length m+1, monic
    std::vector<long long> log_, exp_;

    static std::vector<Elem> least_irreducible(const Field& B, int m) {
        long long count = 1;
        for (int i = 0; i < m; ++i) count *= B.q();
        for (long long low = 0; low < count; ++low) {
            std::vector<Elem> f(m + 1);
            long long x = low;
            for (int i = 0; i < m; ++i) {
                f[i] = static_cast<Elem>(x % B.q());
                x /= B.q();
            }
            f[m] = 1;
            if (poly_irreducible(B, f)) return f;
        }
        throw std::logic_error("ExtField: no irreducible polynomial found");
    }

    static bool poly_irreducible(const Field& B, const std::vector<Elem>& f) {
        int deg = static_cast<int>(f.size()) - 1;
        if (f[0] == 0) return deg == 1;
        for (int d = 1; 2 * d <= deg; ++d) {
            long long count = 1;
            for (int i = 0; i < d; ++i) count *= B.q();
            for (long long low = 0; low < count; ++low) {
                std::vector<Elem> g(d + 1);
                long long x = low;
                for (int i = 0; i < d; ++i) {
                    g[i] = static_cast<Elem>(x % B.q());
                    x /= B.q();
                }
                g[d] = 1;
                std::vector<Elem> r(f);
                for (int i = deg; i >= d; --i) {
                    Elem c = r[i];
                    if (c == 0) continue;
                    for (int j = 0; j <= d; ++j)
                        r[i - d + j] = B.sub(r[i - d + j], B.mul(c, g[j]));
                }
                bool zero = true;
                for (int i = 0; i < d; ++i)
                    if (r[i] != 0) { zero = false; break; }
                if (zero) return false;
            }
        }
        return true;
    }

    long long mul_schoolbook(long long a, long long b) const {
        int q = base_.q();
        std::vector<Elem> da(m_), db(m_);
        long long x = a, y = b;
        for (int i = 0; i < m_; ++i) { da[i] = static_cast<Elem>(x % q); x /= q; }
        for (int i = 0; i < m_; ++i) { db[i] = static_cast<Elem>(y % q); y /= q; }
        std::vector<Elem> prod(2 * m_ - 1, 0);
        for (int i = 0; i < m_; ++i) {
            if (da[i] == 0) continue;
            for (int j = 0; j < m_; ++j)
                prod[i + j] = base_.add(prod[i + j], base_.mul(da[i], db[j]));
        }
        for (int i = 2 * m_ - 2; i >= m_; --i) {
            Elem c = prod[i];
            if (c == 0) continue;
            prod[i] = 0;
            for (int j = 0; j < m_; ++j)
                prod[i - m_ + j] = base_.sub(prod[i - m_ + j], base_.mul(c, modulus_[j]));
        }
        long long out = 0;
        for (int i = m_ - 1; i >= 0; --i) out = out * q + prod[i];
        return out;
    }

    void build_tables() {
        exp_.assign(Q_, 0);
        log_.assign(Q_, 0);
        if (Q_ == 2) {
            exp_ = {1, 0};
            log_ = {0, 0};
            return;
        }
        for (long long g = 2; g < Q_; ++g) {
            long long x = 1;
            long long order = 0;
            do {
                x = mul_schoolbook(x, g);
                ++order;
            } while (x != 1);
            if (order == Q_ - 1) {
                long long y = 1;
                for (long long i = 0; i < Q_ - 1; ++i) {
                    exp_[i] = y;
                    log_[y] = i;
                    y = mul_schoolbook(y, g);
                }
                return;
            }
        }
        throw std::logic_error("ExtField: no generator found");
    }
};

} // namespace qcover
