#include "qarith/muldiv.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace qarith {

MultiplierAlgo MultiplierAlgo::karatsuba(std::size_t piece) {
    if (piece < 2) throw std::invalid_argument("Karatsuba piece size must be at least 2");
    return {Kind::Karatsuba, piece};
}

std::string to_string(const MultiplierAlgo& a) {
    if (a.kind == MultiplierAlgo::Kind::Schoolbook) return "Schoolbook";
    if (a.piece_size == 32) return "Karatsuba";
    return "Karatsuba(" + std::to_string(a.piece_size) + ")";
}

MultiplierAlgo parse_multiplier(std::string_view s) {
    if (s == "Schoolbook") return MultiplierAlgo::schoolbook();
    if (s == "Karatsuba") return MultiplierAlgo::karatsuba();
    const std::string_view prefix = "Karatsuba(";
    if (s.starts_with(prefix) && s.ends_with(")")) {
        std::string digits(s.substr(prefix.size(), s.size() - prefix.size() - 1));
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            return MultiplierAlgo::karatsuba(std::stoul(digits));
        }
    }
    throw std::invalid_argument("unknown multiplier: " + std::string(s));
}

std::string to_string(const DividerSpec& s) {
    return std::string(s.kind == DividerSpec::Kind::Restoring ? "Restoring" : "NonRestoring") + "+" +
           to_string(s.adder);
}

DividerSpec parse_divider(std::string_view s) {
    for (const auto& d : all_dividers()) {
        if (to_string(d) == s) return d;
    }
    throw std::invalid_argument("unknown divider: " + std::string(s));
}

std::vector<DividerSpec> all_dividers() {
    std::vector<DividerSpec> v;
    for (auto kind : {DividerSpec::Kind::Restoring, DividerSpec::Kind::NonRestoring}) {
        for (auto adder : {InPlaceAdderAlgo::Gidney, InPlaceAdderAlgo::TTK, InPlaceAdderAlgo::CDKM}) {
            v.push_back({kind, adder});
        }
    }
    return v;
}

// ---------------------------------------------------------------------------

void schoolbook_multiply(Builder& b, const Register& a, const Register& bb, const Register& out) {
    if (a.empty() || bb.empty()) throw std::invalid_argument("multiplier operands must be non-empty");
    if (out.size() != a.size() + bb.size()) throw std::invalid_argument("product register has the wrong width");
    const std::size_t n = a.size();
    // Partial product a·b_j, one bit wider than a so the row adder can carry out.
    ScopedAncilla pp(b, n + 1);
    for (std::size_t j = 0; j < bb.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) b.ccx(a[i], bb[j], pp[i]);
        add_inplace(b, InPlaceAdderAlgo::Gidney, pp.reg(), out.slice(j, j + n + 1));
        for (std::size_t i = 0; i < n; ++i) b.ccx(a[i], bb[j], pp[i]);
    }
}

namespace {

// Karatsuba with clean ancillas. Every node keeps its intermediate registers
// until the whole tree is walked backwards, so the forward pass records them.
struct KaratsubaNode {
    bool leaf = false;
    Register sx, sy, z0, z1, z2;
    std::unique_ptr<KaratsubaNode> c0, c1, c2;
};

class Karatsuba {
  public:
    Karatsuba(Builder& b, std::size_t piece) : b_(b), piece_(piece) {}

    std::unique_ptr<KaratsubaNode> forward(const Register& x, const Register& y, const Register& p, bool combine) {
        auto node = std::make_unique<KaratsubaNode>();
        const std::size_t m = x.size();
        // The middle product is h + 1 wide, which only shrinks for m > 3.
        if (m <= std::max<std::size_t>(piece_, 3)) {
            node->leaf = true;
            schoolbook_multiply(b_, x, y, p);
            return node;
        }
        const std::size_t h = (m + 1) / 2;
        node->sx = b_.alloc_ancilla(h + 1);
        node->sy = b_.alloc_ancilla(h + 1);
        half_sums(x, y, *node, h);
        node->z0 = b_.alloc_ancilla(2 * h);
        node->c0 = forward(x.slice(0, h), y.slice(0, h), node->z0, true);
        node->z2 = b_.alloc_ancilla(2 * (m - h));
        node->c2 = forward(x.slice_from(h), y.slice_from(h), node->z2, true);
        node->z1 = b_.alloc_ancilla(2 * (h + 1));
        node->c1 = forward(node->sx, node->sy, node->z1, true);
        if (combine) combine_into(*node, p, h);
        return node;
    }

    void reverse(const KaratsubaNode& node, const Register& x, const Register& y, const Register& p, bool combine) {
        const std::size_t m = x.size();
        if (node.leaf) {
            b_.adjoint([&] { schoolbook_multiply(b_, x, y, p); });
            return;
        }
        const std::size_t h = (m + 1) / 2;
        if (combine) b_.adjoint([&] { combine_into(node, p, h); });
        reverse(*node.c1, node.sx, node.sy, node.z1, true);
        b_.release_ancilla(node.z1);
        reverse(*node.c2, x.slice_from(h), y.slice_from(h), node.z2, true);
        b_.release_ancilla(node.z2);
        reverse(*node.c0, x.slice(0, h), y.slice(0, h), node.z0, true);
        b_.release_ancilla(node.z0);
        b_.adjoint([&] { half_sums(x, y, node, h); });
        b_.release_ancilla(node.sy);
        b_.release_ancilla(node.sx);
    }

  private:
    // s = lo + hi over h + 1 bits, with both halves zero-extended.
    void half_sum(const Register& v, const Register& s, std::size_t h) {
        const Register lo = v.slice(0, h);
        const Register hi = v.slice_from(h);
        ScopedAncilla pad(b_, 1 + (h + 1 - hi.size()));
        const Register lo_ext = lo.append(pad[0]);
        const Register hi_ext = hi.concat(pad.reg().slice_from(1));
        add_outofplace(b_, OutOfPlaceAdderAlgo::Gidney, lo_ext, hi_ext, s);
    }

    void half_sums(const Register& x, const Register& y, const KaratsubaNode& node, std::size_t h) {
        half_sum(x, node.sx, h);
        half_sum(y, node.sy, h);
    }

    // p ^= z0 + z2·2^{2h} + (z1 - z0 - z2)·2^h, all modulo 2^{|p|}.
    void combine_into(const KaratsubaNode& node, const Register& p, std::size_t h) {
        const std::size_t w = p.size();
        for (std::size_t i = 0; i < node.z0.size() && i < w; ++i) b_.cx(node.z0[i], p[i]);
        for (std::size_t i = 0; i < node.z2.size() && 2 * h + i < w; ++i) b_.cx(node.z2[i], p[2 * h + i]);
        const Register top = p.slice_from(h);
        const std::size_t tw = top.size();
        const std::size_t shortest = std::min({node.z0.size(), node.z1.size(), node.z2.size()});
        std::unique_ptr<ScopedAncilla> pad;
        if (shortest < tw) pad = std::make_unique<ScopedAncilla>(b_, tw - shortest);
        auto fit = [&](const Register& z) {
            if (z.size() >= tw) return z.slice(0, tw);
            return z.concat(pad->reg().slice(0, tw - z.size()));
        };
        add_inplace(b_, InPlaceAdderAlgo::Gidney, fit(node.z1), top);
        sub_inplace(b_, InPlaceAdderAlgo::Gidney, fit(node.z0), top);
        sub_inplace(b_, InPlaceAdderAlgo::Gidney, fit(node.z2), top);
    }

    Builder& b_;
    std::size_t piece_;
};

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

void multiply(Builder& b, const MultiplierAlgo& algo, const Register& a, const Register& bb, const Register& out) {
    const std::size_t n = a.size();
    if (n == 0 || bb.size() != n || out.size() != 2 * n) {
        throw std::invalid_argument("multiplier expects registers of widths n, n, 2n");
    }
    const std::size_t padded = next_pow2(n);
    if (algo.kind == MultiplierAlgo::Kind::Schoolbook || padded <= algo.piece_size) {
        schoolbook_multiply(b, a, bb, out);
        return;
    }
    Register x = a, y = bb;
    Register pad_x, pad_y;
    if (padded > n) {
        pad_x = b.alloc_ancilla(padded - n);
        pad_y = b.alloc_ancilla(padded - n);
        x = a.concat(pad_x);
        y = bb.concat(pad_y);
    }
    // The root combines straight into the clean output, so only the tree
    // below it is uncomputed.
    Karatsuba k(b, algo.piece_size);
    auto root = k.forward(x, y, out, true);
    k.reverse(*root, x, y, out, false);
    if (padded > n) {
        b.release_ancilla(pad_y);
        b.release_ancilla(pad_x);
    }
}

// ---------------------------------------------------------------------------

void divide(Builder& b, const DividerSpec& spec, const Register& a, const Register& d, const Register& q) {
    const std::size_t n = a.size();
    if (n == 0 || d.size() != n || q.size() != n) throw std::invalid_argument("divider expects three n-qubit registers");
    if (!is_permutation_algo(spec.adder)) throw std::invalid_argument("dividers use permutation adders only");
    const Register z = a.concat(q);
    ScopedAncilla pad(b, 1);
    const Register d_ext = d.append(pad[0]);
    if (spec.kind == DividerSpec::Kind::Restoring) {
        for (std::size_t i = n; i-- > 0;) {
            const Register w = z.slice(i, i + n + 1);
            sub_inplace(b, spec.adder, d_ext, w);
            // A set sign bit means the trial subtraction went negative: add d back.
            add_inplace_controlled(b, spec.adder, z[i + n], d, z.slice(i, i + n));
            b.x(z[i + n]);
        }
        return;
    }
    for (std::size_t i = n; i-- > 0;) {
        const Register w = z.slice(i, i + n + 1);
        if (i == n - 1) {
            sub_inplace(b, spec.adder, d_ext, w);
            continue;
        }
        // Previous remainder negative: add d; otherwise subtract it via the
        // complement of the window.
        const QubitId sign = z[i + n + 1];
        auto flip = [&] {
            b.x(sign);
            for (QubitId t : w) b.cx(sign, t);
            b.x(sign);
        };
        flip();
        add_inplace(b, spec.adder, d_ext, w);
        flip();
    }
    add_inplace_controlled(b, spec.adder, z[n], d, z.slice(0, n));
    for (std::size_t i = n; i < 2 * n; ++i) b.x(z[i]);
}

BuildFn multiplier_builder(const MultiplierAlgo& algo, std::size_t n) {
    if (n == 0) throw std::invalid_argument("multiplier width must be positive");
    return [algo, n](Builder& b) {
        Register a = b.alloc_register(n);
        Register bb = b.alloc_register(n);
        Register out = b.alloc_register(2 * n);
        multiply(b, algo, a, bb, out);
    };
}

BuildFn divider_builder(const DividerSpec& spec, std::size_t n) {
    if (n == 0) throw std::invalid_argument("divider width must be positive");
    return [spec, n](Builder& b) {
        Register a = b.alloc_register(n);
        Register d = b.alloc_register(n);
        Register q = b.alloc_register(n);
        divide(b, spec, a, d, q);
    };
}

Circuit build_multiplier(const MultiplierAlgo& algo, std::size_t n) {
    Builder b;
    multiplier_builder(algo, n)(b);
    return std::move(b).finalize();
}

Circuit build_divider(const DividerSpec& spec, std::size_t n) {
    Builder b;
    divider_builder(spec, n)(b);
    return std::move(b).finalize();
}

std::vector<std::pair<DividerSpec, LogicalCounts>> divider_design_space(std::size_t n) {
    std::vector<std::pair<DividerSpec, LogicalCounts>> rows;
    for (const auto& spec : all_dividers()) {
        rows.emplace_back(spec, count_streaming(divider_builder(spec, n), 1e-3).lowered);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        if (x.second.qubits != y.second.qubits) return x.second.qubits < y.second.qubits;
        return x.second.t_count < y.second.t_count;
    });
    return rows;
}

}  // namespace qarith
