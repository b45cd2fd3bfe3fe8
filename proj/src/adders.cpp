#include "qarith/adders.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qarith {

namespace {

void require_same_width(const Register& a, const Register& b) {
    if (a.empty()) throw std::invalid_argument("adder registers must be non-empty");
    if (a.size() != b.size()) {
        throw std::invalid_argument("adder registers differ in width: " + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()));
    }
}

// Unitary Gidney adder: one carry ancilla per internal bit, computed with a
// single Toffoli each and uncomputed with a second.
void gidney_inplace(Builder& b, const Register& a, const Register& t) {
    const std::size_t n = a.size();
    if (n == 1) {
        b.cx(a[0], t[0]);
        return;
    }
    ScopedAncilla c(b, n - 1);
    b.ccx(a[0], t[0], c[0]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        b.cx(c[i - 1], a[i]);
        b.cx(c[i - 1], t[i]);
        b.ccx(a[i], t[i], c[i]);
        b.cx(c[i - 1], c[i]);
    }
    b.cx(a[n - 1], t[n - 1]);
    b.cx(c[n - 2], t[n - 1]);
    for (std::size_t i = n - 2; i >= 1; --i) {
        b.cx(c[i - 1], c[i]);
        b.ccx(a[i], t[i], c[i]);
        b.cx(c[i - 1], a[i]);
        b.cx(a[i], t[i]);
    }
    b.ccx(a[0], t[0], c[0]);
    b.cx(a[0], t[0]);
}

// Takahashi-Tani-Kunihiro: no ancilla; the carry ripples through the source register.
void ttk_inplace(Builder& b, const Register& a, const Register& t) {
    const std::size_t n = a.size();
    for (std::size_t i = 1; i < n; ++i) b.cx(a[i], t[i]);
    for (std::size_t i = n >= 2 ? n - 2 : 0; i >= 1 && i + 1 < n; --i) b.cx(a[i], a[i + 1]);
    for (std::size_t i = 0; i + 1 < n; ++i) b.ccx(t[i], a[i], a[i + 1]);
    for (std::size_t i = n - 1; i >= 1; --i) {
        b.cx(a[i], t[i]);
        b.ccx(t[i - 1], a[i - 1], a[i]);
    }
    for (std::size_t i = 1; i + 1 < n; ++i) b.cx(a[i], a[i + 1]);
    for (std::size_t i = 0; i < n; ++i) b.cx(a[i], t[i]);
}

void maj(Builder& b, QubitId x, QubitId y, QubitId z) {
    b.cx(z, y);
    b.cx(z, x);
    b.ccx(x, y, z);
}

void uma(Builder& b, QubitId x, QubitId y, QubitId z) {
    b.ccx(x, y, z);
    b.cx(z, x);
    b.cx(x, y);
}

// Cuccaro-Draper-Kutin-Moulton ripple adder with a single carry-in ancilla.
void cdkm_inplace(Builder& b, const Register& a, const Register& t) {
    const std::size_t n = a.size();
    if (n == 1) {
        b.cx(a[0], t[0]);
        return;
    }
    ScopedAncilla anc(b, 1);
    maj(b, anc[0], t[0], a[0]);
    for (std::size_t i = 1; i + 1 < n; ++i) maj(b, a[i - 1], t[i], a[i]);
    b.cx(a[n - 1], t[n - 1]);
    b.cx(a[n - 2], t[n - 1]);
    for (std::size_t i = n - 2; i >= 1; --i) uma(b, a[i - 1], t[i], a[i]);
    uma(b, anc[0], t[0], a[0]);
}

std::size_t floor_log2(std::size_t x) {
    std::size_t r = 0;
    while ((x >> (r + 1)) != 0) ++r;
    return r;
}

// Draper-Kutin-Rains-Svore carry network over the low `m` bits: z[j] ^= carry
// into bit j for j = 1..m (z[0] is unused). The source `p` is restored.
void dkrs_carries(Builder& b, const Register& a, const Register& p, const std::vector<QubitId>& z, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) b.ccx(a[i], p[i], z[i + 1]);
    for (std::size_t i = 0; i < m; ++i) b.cx(a[i], p[i]);

    const std::size_t levels = floor_log2(m);
    // P[t][k] holds the propagate bit of block k at level t; level 0 is p itself.
    std::vector<std::vector<QubitId>> P(levels + 1);
    P[0].assign(p.begin(), p.begin() + long(m));
    std::vector<Register> held;
    for (std::size_t t = 1; t < levels; ++t) {
        const std::size_t count = m >> t;
        P[t].assign(count, QubitId{});
        if (count > 1) {
            Register r = b.alloc_ancilla(count - 1);
            for (std::size_t k = 1; k < count; ++k) P[t][k] = r[k - 1];
            held.push_back(r);
        }
    }
    auto p_rounds = [&] {
        for (std::size_t t = 1; t < levels; ++t) {
            for (std::size_t k = 1; k < (m >> t); ++k) b.ccx(P[t - 1][2 * k], P[t - 1][2 * k + 1], P[t][k]);
        }
    };
    p_rounds();
    for (std::size_t t = 1; t <= levels; ++t) {
        const std::size_t s = std::size_t{1} << t;
        const std::size_t h = s >> 1;
        for (std::size_t k = 0; k < (m >> t); ++k) b.ccx(z[s * k + h], P[t - 1][2 * k + 1], z[s * k + s]);
    }
    std::size_t tmax = 0;
    while (3 * (std::size_t{1} << (tmax + 1)) <= 2 * m) ++tmax;
    for (std::size_t t = tmax; t >= 1; --t) {
        const std::size_t s = std::size_t{1} << t;
        const std::size_t h = s >> 1;
        if (m < h) continue;
        for (std::size_t k = 1; k <= (m - h) / s; ++k) b.ccx(z[s * k], P[t - 1][2 * k], z[s * k + h]);
    }
    b.adjoint(p_rounds);
    for (auto it = held.rbegin(); it != held.rend(); ++it) b.release_ancilla(*it);
    for (std::size_t i = 0; i < m; ++i) b.cx(a[i], p[i]);
}

void dkrs_inplace(Builder& b, const Register& a, const Register& t) {
    const std::size_t n = a.size();
    if (n == 1) {
        b.cx(a[0], t[0]);
        return;
    }
    ScopedAncilla c(b, n - 1);
    std::vector<QubitId> z(n);
    for (std::size_t j = 1; j < n; ++j) z[j] = c[j - 1];
    dkrs_carries(b, a, t, z, n - 1);
    for (std::size_t i = 0; i < n; ++i) b.cx(a[i], t[i]);
    for (std::size_t i = 1; i < n; ++i) b.cx(z[i], t[i]);
    // carries(a, ~s) equal carries(a, b), so the network run backwards on the
    // complemented sum clears the carry register.
    for (std::size_t i = 0; i < n; ++i) b.x(t[i]);
    b.adjoint([&] { dkrs_carries(b, a, t, z, n - 1); });
    for (std::size_t i = 0; i < n; ++i) b.x(t[i]);
}

void qft_inplace(Builder& b, const Register& a, const Register& t) {
    const std::size_t n = a.size();
    qft_noswap(b, t);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k <= j; ++k) b.cphase(a[k], t[j], std::ldexp(std::numbers::pi, -int(j - k)));
    }
    iqft_noswap(b, t);
}

void gidney_outofplace(Builder& b, const Register& a, const Register& bb, const Register& z) {
    const std::size_t n = a.size();
    if (n > 1) b.ccx(a[0], bb[0], z[1]);
    b.cx(a[0], z[0]);
    b.cx(bb[0], z[0]);
    for (std::size_t i = 1; i < n; ++i) {
        if (i + 1 < n) {
            b.cx(z[i], a[i]);
            b.cx(z[i], bb[i]);
            b.ccx(a[i], bb[i], z[i + 1]);
            b.cx(z[i], z[i + 1]);
            b.cx(z[i], a[i]);
            b.cx(z[i], bb[i]);
        }
        b.cx(a[i], z[i]);
        b.cx(bb[i], z[i]);
    }
}

void dkrs_outofplace(Builder& b, const Register& a, const Register& bb, const Register& z) {
    const std::size_t n = a.size();
    if (n > 1) {
        std::vector<QubitId> zz(z.begin(), z.end());
        dkrs_carries(b, a, bb, zz, n - 1);
    }
    for (std::size_t i = 0; i < n; ++i) {
        b.cx(a[i], z[i]);
        b.cx(bb[i], z[i]);
    }
}

// Phase angle pi * (c mod 2^{j+1}) / 2^j, read from the top bits of the window.
double const_phase(const BigInt& c, std::size_t j) {
    double v = 0.0;
    for (std::size_t i = 0; i <= j && i < 60; ++i) {
        if (bit_of(c, j - i)) v += std::ldexp(1.0, -int(i));
    }
    return std::numbers::pi * v;
}

void qft_const_add(Builder& b, const BigInt& c, const Register& t, std::optional<QubitId> ctrl) {
    qft_noswap(b, t);
    for (std::size_t j = 0; j < t.size(); ++j) {
        const double angle = const_phase(c, j);
        if (angle == 0.0) continue;
        if (ctrl) {
            b.cphase(*ctrl, t[j], angle);
        } else {
            b.rz(t[j], angle);
        }
    }
    iqft_noswap(b, t);
}

BigInt reduce_const(const BigInt& c, std::size_t n) {
    if (c < 0) throw std::invalid_argument("constant must be non-negative");
    return c & (pow2(n) - 1);
}

}  // namespace

const std::vector<InPlaceAdderAlgo>& all_inplace_adders() {
    static const std::vector<InPlaceAdderAlgo> v{InPlaceAdderAlgo::Gidney, InPlaceAdderAlgo::TTK,
                                                 InPlaceAdderAlgo::CDKM, InPlaceAdderAlgo::DKRS,
                                                 InPlaceAdderAlgo::QFT};
    return v;
}

const std::vector<OutOfPlaceAdderAlgo>& all_outofplace_adders() {
    static const std::vector<OutOfPlaceAdderAlgo> v{OutOfPlaceAdderAlgo::Gidney, OutOfPlaceAdderAlgo::DKRS};
    return v;
}

const std::vector<ConstAdderAlgo>& all_const_adders() {
    static const std::vector<ConstAdderAlgo> v = [] {
        std::vector<ConstAdderAlgo> r;
        for (auto a : all_inplace_adders()) r.push_back(ConstAdderAlgo::via(a));
        r.push_back(ConstAdderAlgo::qft());
        return r;
    }();
    return v;
}

std::string to_string(InPlaceAdderAlgo a) {
    switch (a) {
        case InPlaceAdderAlgo::Gidney: return "Gidney";
        case InPlaceAdderAlgo::TTK: return "TTK";
        case InPlaceAdderAlgo::CDKM: return "CDKM";
        case InPlaceAdderAlgo::DKRS: return "DKRS";
        case InPlaceAdderAlgo::QFT: return "QFT";
    }
    return "?";
}

std::string to_string(OutOfPlaceAdderAlgo a) {
    return a == OutOfPlaceAdderAlgo::Gidney ? "Gidney" : "DKRS";
}

std::string to_string(const ConstAdderAlgo& a) {
    if (a.kind == ConstAdderAlgo::Kind::QFT) return "QFT";
    return "ViaInPlace(" + to_string(a.inner) + ")";
}

InPlaceAdderAlgo parse_inplace_adder(std::string_view s) {
    for (auto a : all_inplace_adders()) {
        if (to_string(a) == s) return a;
    }
    throw std::invalid_argument("unknown in-place adder: " + std::string(s));
}

OutOfPlaceAdderAlgo parse_outofplace_adder(std::string_view s) {
    for (auto a : all_outofplace_adders()) {
        if (to_string(a) == s) return a;
    }
    throw std::invalid_argument("unknown out-of-place adder: " + std::string(s));
}

ConstAdderAlgo parse_const_adder(std::string_view s) {
    for (const auto& a : all_const_adders()) {
        if (to_string(a) == s) return a;
    }
    throw std::invalid_argument("unknown constant adder: " + std::string(s));
}

bool is_permutation_algo(InPlaceAdderAlgo a) { return a != InPlaceAdderAlgo::QFT; }

void qft_noswap(Builder& b, const Register& r) {
    for (std::size_t j = r.size(); j-- > 0;) {
        b.h(r[j]);
        for (std::size_t k = 0; k < j; ++k) b.cphase(r[k], r[j], std::ldexp(std::numbers::pi, -int(j - k)));
    }
}

void iqft_noswap(Builder& b, const Register& r) {
    b.adjoint([&] { qft_noswap(b, r); });
}

void add_inplace(Builder& b, InPlaceAdderAlgo algo, const Register& a, const Register& target) {
    require_same_width(a, target);
    switch (algo) {
        case InPlaceAdderAlgo::Gidney: gidney_inplace(b, a, target); break;
        case InPlaceAdderAlgo::TTK: ttk_inplace(b, a, target); break;
        case InPlaceAdderAlgo::CDKM: cdkm_inplace(b, a, target); break;
        case InPlaceAdderAlgo::DKRS: dkrs_inplace(b, a, target); break;
        case InPlaceAdderAlgo::QFT: qft_inplace(b, a, target); break;
    }
}

void sub_inplace(Builder& b, InPlaceAdderAlgo algo, const Register& a, const Register& target) {
    for (QubitId q : target) b.x(q);
    add_inplace(b, algo, a, target);
    for (QubitId q : target) b.x(q);
}

void add_inplace_controlled(Builder& b, InPlaceAdderAlgo algo, QubitId ctrl, const Register& a,
                            const Register& target) {
    require_same_width(a, target);
    ScopedAncilla masked(b, a.size());
    for (std::size_t i = 0; i < a.size(); ++i) b.ccx(ctrl, a[i], masked[i]);
    add_inplace(b, algo, masked.reg(), target);
    for (std::size_t i = 0; i < a.size(); ++i) b.ccx(ctrl, a[i], masked[i]);
}

void sub_inplace_controlled(Builder& b, InPlaceAdderAlgo algo, QubitId ctrl, const Register& a,
                            const Register& target) {
    for (QubitId q : target) b.x(q);
    add_inplace_controlled(b, algo, ctrl, a, target);
    for (QubitId q : target) b.x(q);
}

void add_outofplace(Builder& b, OutOfPlaceAdderAlgo algo, const Register& a, const Register& bb, const Register& z) {
    require_same_width(a, bb);
    require_same_width(a, z);
    if (algo == OutOfPlaceAdderAlgo::Gidney) {
        gidney_outofplace(b, a, bb, z);
    } else {
        dkrs_outofplace(b, a, bb, z);
    }
}

void add_const(Builder& b, const ConstAdderAlgo& algo, const BigInt& constant, const Register& target,
               std::optional<QubitId> ctrl) {
    if (target.empty()) throw std::invalid_argument("constant adder target must be non-empty");
    const BigInt c = reduce_const(constant, target.size());
    if (algo.kind == ConstAdderAlgo::Kind::QFT) {
        qft_const_add(b, c, target, ctrl);
        return;
    }
    if (c == 0) return;
    ScopedAncilla k(b, target.size());
    auto load = [&] {
        for (std::size_t i = 0; i < target.size(); ++i) {
            if (!bit_of(c, i)) continue;
            if (ctrl) {
                b.cx(*ctrl, k[i]);
            } else {
                b.x(k[i]);
            }
        }
    };
    load();
    add_inplace(b, algo.inner, k.reg(), target);
    load();
}

void sub_const(Builder& b, const ConstAdderAlgo& algo, const BigInt& constant, const Register& target,
               std::optional<QubitId> ctrl) {
    const BigInt m = pow2(target.size());
    add_const(b, algo, mod_floor(m - reduce_const(constant, target.size()), m), target, ctrl);
}

Circuit build_inplace_adder(InPlaceAdderAlgo algo, std::size_t n) {
    if (n == 0) throw std::invalid_argument("adder width must be positive");
    Builder b;
    Register a = b.alloc_register(n);
    Register t = b.alloc_register(n);
    add_inplace(b, algo, a, t);
    return std::move(b).finalize();
}

Circuit build_outofplace_adder(OutOfPlaceAdderAlgo algo, std::size_t n) {
    if (n == 0) throw std::invalid_argument("adder width must be positive");
    Builder b;
    Register a = b.alloc_register(n);
    Register bb = b.alloc_register(n);
    Register z = b.alloc_register(n);
    add_outofplace(b, algo, a, bb, z);
    return std::move(b).finalize();
}

Circuit build_const_adder(const ConstAdderAlgo& algo, std::size_t n, const BigInt& constant) {
    if (n == 0) throw std::invalid_argument("adder width must be positive");
    if (constant < 0 || constant >= pow2(n)) {
        throw std::invalid_argument("constant " + constant.str() + " is outside [0, 2^" + std::to_string(n) + ")");
    }
    Builder b;
    Register t = b.alloc_register(n);
    add_const(b, algo, constant, t);
    return std::move(b).finalize();
}

Circuit build_subtractor(InPlaceAdderAlgo algo, std::size_t n) {
    if (n == 0) throw std::invalid_argument("subtractor width must be positive");
    Builder b;
    Register a = b.alloc_register(n);
    Register t = b.alloc_register(n);
    sub_inplace(b, algo, a, t);
    return std::move(b).finalize();
}

BigInt sweep_adder_constant(std::size_t n) {
    BigInt s = 0;
    for (std::size_t i = 0; i <= (n + 1) / 2; ++i) s += pow2(2 * i);
    return s & (pow2(n) - 1);
}

}  // namespace qarith
