#pragma once

#include <map>
#include <vector>

#include "logsle/dual.hpp"
#include "logsle/partition.hpp"

namespace logsle {

/// Conformal weight and central charge of a rank-two Jordan-cell module.
/// The central charge may carry a nilpotent slope; the weight is kept
/// theta-free, the Jordan partner being encoded in dual coefficients.
struct ModuleContext {
    Rational weight;
    DualRational central;

    friend bool operator==(const ModuleContext& a, const ModuleContext& b)
    {
        return a.weight == b.weight && a.central == b.central;
    }
};

/// Finite linear combination of descendant states over the highest-weight
/// state, with dual-rational coefficients. The body of a coefficient is the
/// primary sector, the slope the logarithmic partner sector; the generalized
/// L_0 eigenvalue of the highest-weight state is weight + theta.
class ModuleState {
public:
    using TermMap = std::map<Partition, DualRational>;

    explicit ModuleState(ModuleContext ctx) : ctx_(std::move(ctx)) {}

    static ModuleState zero(ModuleContext ctx) { return ModuleState(std::move(ctx)); }
    static ModuleState highest_weight(ModuleContext ctx)
    {
        ModuleState s(std::move(ctx));
        s.add_term({}, DualRational(Rational(1)));
        return s;
    }

    const ModuleContext& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    DualRational coeff(const Partition& p) const
    {
        const auto it = terms_.find(p);
        return it == terms_.end() ? DualRational() : it->second;
    }

    /// Adds c times the descendant labeled by p, dropping exact zeros.
    void add_term(const Partition& p, const DualRational& c);

    int max_level() const;
    bool is_homogeneous(int lvl) const;

    ModuleState& operator+=(const ModuleState& other);
    ModuleState& operator-=(const ModuleState& other);
    ModuleState& operator*=(const DualRational& c);

    friend ModuleState operator+(ModuleState a, const ModuleState& b) { return a += b; }
    friend ModuleState operator-(ModuleState a, const ModuleState& b) { return a -= b; }
    friend ModuleState operator*(const DualRational& c, ModuleState s) { return s *= c; }

    friend bool operator==(const ModuleState& a, const ModuleState& b)
    {
        return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
    }

private:
    ModuleContext ctx_;
    TermMap terms_;
};

/// Virasoro mode acting on a state: commutes L_n through each descendant
/// word with the standard central extension, then uses the highest-weight
/// relations L_0 |hw> = (weight + theta)|hw>, L_{n>0} |hw> = 0.
ModuleState act(int n, const ModuleState& state);

/// Finitely supported mode-index -> coefficient map, describing an operator
/// linear in the generators.
using CoeffMap = std::map<int, DualRational>;

/// Sum over the map of coeff * L_n applied to the state.
ModuleState apply_operator(const CoeffMap& coeffs, const ModuleState& state);

struct NullVector {
    DualRational gamma;
    DualRational central;
    ModuleState chi;
};

/// The level-two logarithmic null vector (-2 L_{-2} + gamma L_{-1}^2)|hw>
/// over the Jordan-cell module of the given weight, together with the
/// gamma and central values that make it vanish under L_1 and L_2.
/// Throws for weight -1/2 where gamma has a pole.
NullVector level_two_null_vector(const Rational& delta);

struct VanishingCheck {
    ModuleState residual1;
    ModuleState residual2;
    bool is_null = false;
};

/// Applies L_1 and L_2 and reports whether both residuals vanish exactly.
VanishingCheck check_vanishing(const ModuleState& chi);

/// (alpha0 + beta^2/2)|hw> for the walk with drift coefficients a and noise
/// coefficients b, computed symbolically.
ModuleState drift_state(const CoeffMap& a, const CoeffMap& b, const ModuleContext& ctx);

/// Canonical representative of a state modulo the submodule generated by a
/// verified null vector, truncated at level_cutoff. At each level the
/// lexicographically largest partition directions reachable from the null
/// submodule are eliminated. Idempotent and linear.
ModuleState quotient_project(const ModuleState& state, const ModuleState& chi, int level_cutoff);

/// Matrix of the operator on the span of the given basis partitions, column
/// j holding the image of basis state j; components outside the basis are
/// dropped.
std::vector<std::vector<DualRational>> operator_matrix(const CoeffMap& coeffs,
                                                       const std::vector<Partition>& basis,
                                                       const ModuleContext& ctx);

} // namespace logsle
