#include "qarith/modexp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qarith/adders.hpp"

namespace qarith {

namespace {

const ConstAdderAlgo kConstAdder = ConstAdderAlgo::via(InPlaceAdderAlgo::Gidney);
constexpr InPlaceAdderAlgo kAdder = InPlaceAdderAlgo::Gidney;

class UnaryIteration {
  public:
    UnaryIteration(Builder& b, const Register& addr, const std::vector<BigInt>& entries, const Register& target)
        : b_(b), addr_(addr), entries_(entries), target_(target) {}

    void run() {
        const std::size_t k = addr_.size();
        if (k == 0) {
            leaf(std::nullopt, 0);
            return;
        }
        // The top address bit controls the two root subtrees directly.
        const QubitId top = addr_[k - 1];
        const std::size_t half = std::size_t{1} << (k - 1);
        if (any(0, half)) {
            b_.x(top);
            visit(1, 0, top);
            b_.x(top);
        }
        if (any(half, half)) visit(1, half, top);
    }

  private:
    bool any(std::size_t base, std::size_t count) const {
        for (std::size_t i = base; i < base + count; ++i) {
            if (entries_[i] != 0) return true;
        }
        return false;
    }

    void leaf(std::optional<QubitId> ctrl, std::size_t index) {
        const BigInt& v = entries_[index];
        for (std::size_t i = 0; i < target_.size(); ++i) {
            if (!bit_of(v, i)) continue;
            if (ctrl) b_.cx(*ctrl, target_[i]);
            else b_.x(target_[i]);
        }
    }

    // ctrl is set exactly when the top `level` address bits spell out `base`.
    void visit(std::size_t level, std::size_t base, QubitId ctrl) {
        const std::size_t k = addr_.size();
        if (level == k) {
            leaf(ctrl, base);
            return;
        }
        const QubitId bit = addr_[k - 1 - level];
        const std::size_t half = std::size_t{1} << (k - 1 - level);
        const bool lo = any(base, half), hi = any(base + half, half);
        if (!lo && !hi) return;
        ScopedAncilla anc(b_, 1);
        b_.x(bit);
        b_.ccx(ctrl, bit, anc[0]);
        b_.x(bit);
        if (lo) visit(level + 1, base, anc[0]);
        b_.cx(ctrl, anc[0]);
        if (hi) visit(level + 1, base + half, anc[0]);
        b_.ccx(ctrl, bit, anc[0]);
    }

    Builder& b_;
    const Register& addr_;
    const std::vector<BigInt>& entries_;
    const Register& target_;
};

// Moves the value held on current[i] onto target[i] with swaps.
void realign(Builder& b, const Register& current, const Register& target) {
    std::vector<QubitId> cur(current.begin(), current.end());
    for (std::size_t i = 0; i < cur.size(); ++i) {
        if (cur[i] == target[i]) continue;
        auto j = std::size_t(std::find(cur.begin() + std::ptrdiff_t(i), cur.end(), target[i]) - cur.begin());
        if (j == cur.size()) throw std::logic_error("realign: registers hold different qubits");
        b.swap(cur[i], cur[j]);
        std::swap(cur[i], cur[j]);
    }
}

void check_modulus(const BigInt& N, std::size_t n) {
    if (N <= 1 || N >= pow2(n)) throw std::invalid_argument("modulus must satisfy 1 < N < 2^n");
}

}  // namespace

void table_lookup(Builder& b, const Register& addr, const std::vector<BigInt>& entries, const Register& target) {
    if (addr.size() >= 63 || entries.size() != (std::size_t{1} << addr.size())) {
        throw std::invalid_argument("lookup table needs exactly 2^address_bits entries");
    }
    const BigInt limit = pow2(target.size());
    for (const auto& e : entries) {
        if (e < 0 || e >= limit) throw std::invalid_argument("lookup entry " + e.str() + " does not fit the target");
    }
    UnaryIteration(b, addr, entries, target).run();
}

Circuit build_table_lookup(const LookupTable& t, std::size_t m) {
    if (t.address_bits == 0 || m == 0) throw std::invalid_argument("lookup needs positive address and target widths");
    Builder b;
    Register addr = b.alloc_register(t.address_bits);
    Register y = b.alloc_register(m);
    table_lookup(b, addr, t.entries, y);
    return std::move(b).finalize();
}

void modadd_const(Builder& b, const BigInt& c, const BigInt& N, const Register& z, std::optional<QubitId> ctrl) {
    const std::size_t n = z.size();
    check_modulus(N, n);
    if (c < 0 || c >= N) throw std::invalid_argument("modular addend must lie in [0, N)");
    if (c == 0) return;
    ScopedAncilla top(b, 1), flag(b, 1);
    const Register ze = z.append(top[0]);
    // flag = 1 when z + c < N, i.e. the trial subtraction of N must be undone.
    add_const(b, kConstAdder, mod_floor(c - N, pow2(n + 1)), ze, ctrl);
    b.cx(top[0], flag[0]);
    add_const(b, kConstAdder, N, ze, flag[0]);
    // Afterwards flag = 1 exactly when the result is at least c.
    sub_const(b, kConstAdder, c, ze, ctrl);
    b.x(top[0]);
    if (ctrl) b.ccx(*ctrl, top[0], flag[0]);
    else b.cx(top[0], flag[0]);
    b.x(top[0]);
    add_const(b, kConstAdder, c, ze, ctrl);
}

void modadd_quantum(Builder& b, const Register& c, const BigInt& N, const Register& z, std::optional<QubitId> ctrl) {
    const std::size_t n = z.size();
    check_modulus(N, n);
    if (c.size() != n) throw std::invalid_argument("modular adder operands need equal widths");
    ScopedAncilla top(b, 1), flag(b, 1), pad(b, 1);
    const Register ze = z.append(top[0]);
    const Register ce = c.append(pad[0]);
    auto add = [&] {
        if (ctrl) add_inplace_controlled(b, kAdder, *ctrl, ce, ze);
        else add_inplace(b, kAdder, ce, ze);
    };
    auto sub = [&] {
        if (ctrl) sub_inplace_controlled(b, kAdder, *ctrl, ce, ze);
        else sub_inplace(b, kAdder, ce, ze);
    };
    add();
    sub_const(b, kConstAdder, N, ze);
    b.cx(top[0], flag[0]);
    add_const(b, kConstAdder, N, ze, flag[0]);
    sub();
    b.x(top[0]);
    b.cx(top[0], flag[0]);
    b.x(top[0]);
    add();
}

Register moddouble(Builder& b, const BigInt& N, const Register& z_with_top) {
    const std::size_t n = z_with_top.size() - 1;
    check_modulus(N, n);
    if (N % 2 == 0) throw std::invalid_argument("modular doubling needs an odd modulus");
    // Shifting left is a relabelling: the clean top qubit becomes bit 0.
    const Register r = Register({z_with_top[n]}).concat(z_with_top.slice(0, n));
    ScopedAncilla flag(b, 1);
    sub_const(b, kConstAdder, N, r);
    b.cx(r[n], flag[0]);
    add_const(b, kConstAdder, N, r, flag[0]);
    // 2z is even and 2z - N is odd.
    b.cx(r[0], flag[0]);
    b.x(flag[0]);
    return r;
}

void modmul_quantum_out(Builder& b, const Register& y, const Register& c, const BigInt& N, const Register& z) {
    const std::size_t n = z.size();
    if (y.size() != n || c.size() != n) throw std::invalid_argument("modular multiplier operands need equal widths");
    ScopedAncilla top(b, 1);
    const Register home = z.append(top[0]);
    Register e = home;
    for (std::size_t j = n; j-- > 0;) {
        if (j + 1 < n) e = moddouble(b, N, e);
        modadd_quantum(b, c, N, e.slice(0, n), y[j]);
    }
    realign(b, e, home);
}

void modmul_const_out(Builder& b, const BigInt& c, const BigInt& N, const Register& y, const Register& z,
                      std::optional<QubitId> ctrl) {
    if (y.size() != z.size()) throw std::invalid_argument("modular multiplier operands need equal widths");
    for (std::size_t j = 0; j < y.size(); ++j) {
        const BigInt k = mod_floor(c * pow2(j), N);
        if (k == 0) continue;
        if (!ctrl) {
            modadd_const(b, k, N, z, y[j]);
            continue;
        }
        ScopedAncilla both(b, 1);
        b.ccx(*ctrl, y[j], both[0]);
        modadd_const(b, k, N, z, both[0]);
        b.ccx(*ctrl, y[j], both[0]);
    }
}

void modmul_const_inplace(Builder& b, const BigInt& c, const BigInt& N, const Register& y,
                          std::optional<QubitId> ctrl) {
    const std::size_t n = y.size();
    check_modulus(N, n);
    const BigInt cr = mod_floor(c, N);
    if (gcd(cr, N) != 1) throw std::invalid_argument("multiplier constant is not invertible modulo N");
    const BigInt inv = mod_inverse(cr, N);
    ScopedAncilla z(b, n);
    modmul_const_out(b, cr, N, y, z.reg(), ctrl);
    for (std::size_t i = 0; i < n; ++i) {
        if (ctrl) {
            b.cx(z[i], y[i]);
            b.ccx(*ctrl, y[i], z[i]);
            b.cx(z[i], y[i]);
        } else {
            b.swap(y[i], z[i]);
        }
    }
    b.adjoint([&] { modmul_const_out(b, inv, N, y, z.reg(), ctrl); });
}

Circuit build_modmul_const(const BigInt& c, const BigInt& N, std::size_t n) {
    if (n == 0) throw std::invalid_argument("width must be positive");
    check_modulus(N, n);
    if (c <= 0 || c >= N) throw std::invalid_argument("constant must lie in (0, N)");
    if (gcd(c, N) != 1) throw std::invalid_argument("gcd(c, N) must be 1");
    Builder b;
    Register x = b.alloc_register(n);
    modmul_const_inplace(b, c, N, x);
    return std::move(b).finalize();
}

// ---------------------------------------------------------------------------

ModExpAlgo ModExpAlgo::windowed(std::size_t w) {
    if (w == 0) throw std::invalid_argument("window size must be positive");
    return {Kind::LYYWindowed, w};
}

std::size_t ModExpAlgo::window_for(std::size_t n) const {
    switch (kind) {
        case Kind::LYY: return 0;
        case Kind::LYYWindowed: return window;
        case Kind::LYYWindowedOpt: return optimal_window(n);
    }
    return 0;
}

std::string to_string(const ModExpAlgo& a) {
    switch (a.kind) {
        case ModExpAlgo::Kind::LYY: return "LYY";
        case ModExpAlgo::Kind::LYYWindowed: return "LYYWindowed(" + std::to_string(a.window) + ")";
        case ModExpAlgo::Kind::LYYWindowedOpt: return "LYYWindowedOpt";
    }
    return "?";
}

ModExpAlgo parse_modexp(std::string_view s) {
    if (s == "LYY") return ModExpAlgo::lyy();
    if (s == "LYYWindowedOpt") return ModExpAlgo::windowed_opt();
    const std::string_view prefix = "LYYWindowed(";
    if (s.starts_with(prefix) && s.ends_with(")")) {
        std::string digits(s.substr(prefix.size(), s.size() - prefix.size() - 1));
        if (!digits.empty() && digits.size() < 6 && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            return ModExpAlgo::windowed(std::stoul(digits));
        }
    }
    throw std::invalid_argument("unknown modexp algorithm: " + std::string(s));
}

std::size_t optimal_window(std::size_t n) {
    if (n <= 1) return 1;
    const auto w = std::size_t(std::floor(2.0 * std::log2(double(n)) + 0.5));
    return std::clamp<std::size_t>(w, 1, n);
}

void modexp(Builder& b, const ModExpAlgo& algo, const BigInt& a, const BigInt& N, const Register& x,
            const Register& y) {
    const std::size_t n = y.size();
    if (n == 0 || x.empty()) throw std::invalid_argument("modexp registers must be non-empty");
    check_modulus(N, n);
    if (a <= 0 || a >= N || gcd(a, N) != 1) throw std::invalid_argument("base must lie in (0, N) and be coprime to N");
    const std::size_t w = algo.window_for(x.size());
    if (w > x.size()) throw std::invalid_argument("window larger than the exponent register");
    if (w > 0 && N % 2 == 0) throw std::invalid_argument("windowed modexp needs an odd modulus");

    b.x(y[0]);
    if (w == 0) {
        for (std::size_t i = 0; i < x.size(); ++i) modmul_const_inplace(b, mod_pow(a, pow2(i), N), N, y, x[i]);
        return;
    }
    for (std::size_t lo = 0; lo < x.size(); lo += w) {
        const Register e = x.slice(lo, std::min(lo + w, x.size()));
        const BigInt step = mod_pow(a, pow2(lo), N);
        std::vector<BigInt> table(std::size_t{1} << e.size()), inverse(table.size());
        BigInt acc = 1;
        for (std::size_t v = 0; v < table.size(); ++v) {
            table[v] = acc;
            inverse[v] = mod_inverse(acc, N);
            acc = mod_floor(acc * step, N);
        }
        ScopedAncilla z(b, n), c(b, n);
        table_lookup(b, e, table, c.reg());
        modmul_quantum_out(b, y, c.reg(), N, z.reg());
        table_lookup(b, e, table, c.reg());
        for (std::size_t i = 0; i < n; ++i) b.swap(y[i], z[i]);
        table_lookup(b, e, inverse, c.reg());
        b.adjoint([&] { modmul_quantum_out(b, y, c.reg(), N, z.reg()); });
        table_lookup(b, e, inverse, c.reg());
    }
}

BuildFn modexp_builder(const ModExpAlgo& algo, const BigInt& a, const BigInt& N, std::size_t n) {
    if (n == 0) throw std::invalid_argument("width must be positive");
    check_modulus(N, n);
    return [algo, a, N, n](Builder& b) {
        Register x = b.alloc_register(n);
        Register y = b.alloc_register(n);
        modexp(b, algo, a, N, x, y);
    };
}

Circuit build_modexp(const ModExpAlgo& algo, const BigInt& a, const BigInt& N, std::size_t n) {
    Builder b;
    modexp_builder(algo, a, N, n)(b);
    return std::move(b).finalize();
}

BigInt sweep_modexp_modulus(std::size_t n) { return pow2(n) - 1; }

BigInt sweep_modexp_base(const BigInt& N) {
    if (N <= 2) throw std::invalid_argument("modulus too small for a non-trivial base");
    BigInt a = mod_floor(pow(BigInt(5), 24) + pow(BigInt(24), 5), N);
    while (a < 2 || gcd(a, N) != 1) a = a + 1 >= N ? BigInt(2) : a + 1;
    return a;
}

}  // namespace qarith
