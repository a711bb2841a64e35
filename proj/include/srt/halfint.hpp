#ifndef SRT_HALFINT_HPP
#define SRT_HALFINT_HPP

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>

namespace srt {

/* Exact half-integer, stored as twice its value.  All weights, spins and
 * parities in the engine are HalfInt so that indexing never suffers float
 * drift; conversion to double happens only when a matrix element is built. */
class HalfInt {
public:
    constexpr HalfInt() : t_(0) {}
    constexpr HalfInt(int n) : t_(2 * n) {}   // implicit from integers is intended
    static constexpr HalfInt from_twice(std::int64_t twice) {
        HalfInt h;
        h.t_ = twice;
        return h;
    }
    static constexpr HalfInt half() { return from_twice(1); }

    constexpr std::int64_t twice() const { return t_; }
    constexpr bool is_integer() const { return t_ % 2 == 0; }
    constexpr double to_double() const { return 0.5 * static_cast<double>(t_); }

    constexpr HalfInt operator-() const { return from_twice(-t_); }
    constexpr HalfInt operator+(HalfInt o) const { return from_twice(t_ + o.t_); }
    constexpr HalfInt operator-(HalfInt o) const { return from_twice(t_ - o.t_); }
    constexpr HalfInt& operator+=(HalfInt o) { t_ += o.t_; return *this; }
    constexpr HalfInt& operator-=(HalfInt o) { t_ -= o.t_; return *this; }
    friend constexpr HalfInt operator*(int k, HalfInt h) { return from_twice(k * h.t_); }

    constexpr auto operator<=>(const HalfInt&) const = default;

    // floor/parity helpers
    constexpr bool same_parity(HalfInt o) const { return (t_ - o.t_) % 2 == 0; }

    std::string str() const {
        if (is_integer()) return std::to_string(t_ / 2);
        return std::to_string(t_) + "/2";
    }

    static HalfInt parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) {
            // allow "1.5"-style input for convenience
            auto dot = s.find('.');
            if (dot != std::string::npos) {
                double v = std::strtod(s.c_str(), nullptr);
                double tv = 2.0 * v;
                auto r = static_cast<std::int64_t>(tv < 0 ? tv - 0.5 : tv + 0.5);
                if (std::abs(tv - static_cast<double>(r)) > 1e-9)
                    throw std::invalid_argument("not a half-integer: " + s);
                return from_twice(r);
            }
            return HalfInt(static_cast<int>(std::strtol(s.c_str(), nullptr, 10)));
        }
        std::int64_t num = std::strtoll(s.substr(0, slash).c_str(), nullptr, 10);
        std::int64_t den = std::strtoll(s.substr(slash + 1).c_str(), nullptr, 10);
        if (den != 2 && den != 1) throw std::invalid_argument("denominator must be 1 or 2: " + s);
        return den == 2 ? from_twice(num) : HalfInt(static_cast<int>(num));
    }

private:
    std::int64_t t_;
};

inline HalfInt abs(HalfInt h) { return h.twice() < 0 ? -h : h; }
inline HalfInt min(HalfInt a, HalfInt b) { return a < b ? a : b; }
inline HalfInt max(HalfInt a, HalfInt b) { return a < b ? b : a; }

// (-1)^h for integer h; throws if h is not an integer (sign would be ill-defined).
inline int parity_sign(HalfInt h) {
    if (!h.is_integer()) throw std::invalid_argument("parity_sign of non-integer");
    return (h.twice() / 2) % 2 == 0 ? 1 : -1;
}

}  // namespace srt

template <>
struct std::hash<srt::HalfInt> {
    std::size_t operator()(const srt::HalfInt& h) const noexcept {
        return std::hash<std::int64_t>()(h.twice());
    }
};

#endif
