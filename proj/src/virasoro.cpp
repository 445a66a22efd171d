#include "logsle/virasoro.hpp"

#include <algorithm>
#include <stdexcept>

namespace logsle {

void ModuleState::add_term(const Partition& p, const DualRational& c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int ModuleState::max_level() const
{
    int m = 0;
    for (const auto& [p, c] : terms_) m = std::max(m, level(p));
    return m;
}

bool ModuleState::is_homogeneous(int lvl) const
{
    for (const auto& [p, c] : terms_)
        if (level(p) != lvl) return false;
    return true;
}

ModuleState& ModuleState::operator+=(const ModuleState& other)
{
    if (!(ctx_ == other.ctx_)) throw std::invalid_argument("module context mismatch");
    for (const auto& [p, c] : other.terms_) add_term(p, c);
    return *this;
}

ModuleState& ModuleState::operator-=(const ModuleState& other)
{
    if (!(ctx_ == other.ctx_)) throw std::invalid_argument("module context mismatch");
    for (const auto& [p, c] : other.terms_) add_term(p, -c);
    return *this;
}

ModuleState& ModuleState::operator*=(const DualRational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    TermMap scaled;
    for (const auto& [p, v] : terms_) {
        DualRational w = v * c;
        if (!w.is_zero()) scaled.emplace(p, std::move(w));
    }
    terms_ = std::move(scaled);
    return *this;
}

namespace {

// L_g applied to the canonical descendant word given by the partition.
// Straightening: commute L_g to the right until it either extends the word
// (g <= -head) or hits the highest-weight state.
ModuleState apply_generator(int g, const Partition& word, const ModuleContext& ctx)
{
    ModuleState out(ctx);
    if (word.empty()) {
        if (g > 0) return out;
        if (g == 0) {
            out.add_term({}, DualRational(ctx.weight, Rational(1)));
            return out;
        }
        out.add_term({-g}, DualRational(Rational(1)));
        return out;
    }

    const int head = word.front();
    const Partition rest(word.begin() + 1, word.end());

    if (g <= -head) {
        Partition extended;
        extended.reserve(word.size() + 1);
        extended.push_back(-g);
        extended.insert(extended.end(), word.begin(), word.end());
        out.add_term(extended, DualRational(Rational(1)));
        return out;
    }

    // L_g L_{-head} = L_{-head} L_g + (g + head) L_{g-head}
    //                 + delta_{g,head} (c/12) g (g^2 - 1)
    const ModuleState tail = apply_generator(g, rest, ctx);
    for (const auto& [p, c] : tail.terms()) {
        ModuleState lifted = apply_generator(-head, p, ctx);
        lifted *= c;
        out += lifted;
    }
    ModuleState shifted = apply_generator(g - head, rest, ctx);
    shifted *= DualRational(Rational(g + head));
    out += shifted;
    if (g == head) {
        const Rational factor = Rational(g) * Rational(g * g - 1) / 12;
        out.add_term(rest, ctx.central * DualRational(factor));
    }
    return out;
}

} // namespace

ModuleState act(int n, const ModuleState& state)
{
    ModuleState out(state.context());
    for (const auto& [p, c] : state.terms()) {
        ModuleState image = apply_generator(n, p, state.context());
        image *= c;
        out += image;
    }
    return out;
}

ModuleState apply_operator(const CoeffMap& coeffs, const ModuleState& state)
{
    ModuleState out(state.context());
    for (const auto& [n, c] : coeffs) {
        if (c.is_zero()) continue;
        ModuleState image = act(n, state);
        image *= c;
        out += image;
    }
    return out;
}

NullVector level_two_null_vector(const Rational& delta)
{
    const Rational denom = 2 * delta + 1;
    if (denom == 0)
        throw std::domain_error("gamma pole: no level-two null vector at weight -1/2");

    // gamma = 3 / (2 weight + 1 + 2 theta), expanded exactly
    const DualRational gamma(3 / denom, Rational(-6) / (denom * denom));
    const DualRational weight_dual(delta, Rational(1));
    const DualRational central = (DualRational(Rational(6)) * gamma - DualRational(Rational(8))) * weight_dual;

    ModuleContext ctx{delta, central};
    ModuleState chi(ctx);
    chi.add_term({2}, DualRational(Rational(-2)));
    chi.add_term({1, 1}, gamma);
    return {gamma, central, chi};
}

VanishingCheck check_vanishing(const ModuleState& chi)
{
    VanishingCheck result{act(1, chi), act(2, chi), false};
    result.is_null = result.residual1.is_zero() && result.residual2.is_zero();
    return result;
}

ModuleState drift_state(const CoeffMap& a, const CoeffMap& b, const ModuleContext& ctx)
{
    const ModuleState hw = ModuleState::highest_weight(ctx);
    ModuleState out = apply_operator(a, hw);
    ModuleState noise_sq = apply_operator(b, apply_operator(b, hw));
    noise_sq *= DualRational(Rational(1, 2));
    out += noise_sq;
    return out;
}

namespace {

// Echelonized generating set of the truncated null submodule over the dual
// rationals. Rows with an invertible pivot reduce both components; fully
// nilpotent remainders are stripped of theta and reduce slopes only.
struct NullBasis {
    std::vector<std::pair<Partition, ModuleState>> unit_rows; // pivot coeff 1
    std::vector<std::pair<Partition, ModuleState>> slope_rows; // theta-stripped, pivot body 1

    void reduce_full(ModuleState& v) const
    {
        for (const auto& [pivot, row] : unit_rows) {
            const DualRational c = v.coeff(pivot);
            if (c.is_zero()) continue;
            ModuleState scaled = row;
            scaled *= c;
            v -= scaled;
        }
        for (const auto& [pivot, row] : slope_rows) {
            const Rational s = v.coeff(pivot).slope;
            if (s == 0) continue;
            ModuleState scaled = row;
            scaled *= DualRational(Rational(0), s);
            v -= scaled;
        }
    }
};

NullBasis echelonize_submodule(const ModuleState& chi, int level_cutoff)
{
    NullBasis basis;
    const int chi_level = chi.max_level();

    std::vector<ModuleState> generators;
    for (int extra = 0; extra + chi_level <= level_cutoff; ++extra) {
        for (const auto& word : partitions_of(extra)) {
            ModuleState g = chi;
            for (auto it = word.rbegin(); it != word.rend(); ++it) g = act(-*it, g);
            generators.push_back(std::move(g));
        }
    }

    std::vector<ModuleState> nilpotent_pending;
    for (ModuleState& g : generators) {
        basis.reduce_full(g);
        if (g.is_zero()) continue;
        // pick the largest partition with invertible coefficient
        const Partition* pivot = nullptr;
        for (const auto& [p, c] : g.terms()) {
            if (c.body == 0) continue;
            if (!pivot || p > *pivot) pivot = &p;
        }
        if (pivot) {
            const Partition pv = *pivot;
            g *= inverse(g.coeff(pv));
            // back-substitute into existing unit rows so reduction is one pass
            for (auto& [q, row] : basis.unit_rows) {
                const DualRational c = row.coeff(pv);
                if (c.is_zero()) continue;
                ModuleState scaled = g;
                scaled *= c;
                row -= scaled;
            }
            basis.unit_rows.emplace_back(pv, std::move(g));
        } else {
            nilpotent_pending.push_back(std::move(g));
        }
    }

    for (ModuleState& g : nilpotent_pending) {
        // g = theta * r with r rational; keep r as a slope reducer
        ModuleState stripped(g.context());
        for (const auto& [p, c] : g.terms()) stripped.add_term(p, DualRational(c.slope));
        for (const auto& [pivot, row] : basis.slope_rows) {
            const Rational s = stripped.coeff(pivot).body;
            if (s == 0) continue;
            ModuleState scaled = row;
            scaled *= DualRational(s);
            stripped -= scaled;
        }
        if (stripped.is_zero()) continue;
        const Partition* pivot = nullptr;
        for (const auto& [p, c] : stripped.terms()) {
            if (c.body == 0) continue;
            if (!pivot || p > *pivot) pivot = &p;
        }
        if (!pivot) continue;
        const Partition pv = *pivot;
        stripped *= inverse(DualRational(stripped.coeff(pv).body));
        basis.slope_rows.emplace_back(pv, std::move(stripped));
    }
    return basis;
}

} // namespace

ModuleState quotient_project(const ModuleState& state, const ModuleState& chi, int level_cutoff)
{
    if (!check_vanishing(chi).is_null)
        throw std::invalid_argument("not a null vector: vanishing conditions fail");
    if (state.max_level() > level_cutoff)
        throw std::invalid_argument("state level exceeds quotient cutoff");

    const NullBasis basis = echelonize_submodule(chi, level_cutoff);
    ModuleState reduced = state;
    basis.reduce_full(reduced);
    return reduced;
}

std::vector<std::vector<DualRational>> operator_matrix(const CoeffMap& coeffs,
                                                       const std::vector<Partition>& basis,
                                                       const ModuleContext& ctx)
{
    std::map<Partition, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);

    const std::size_t n = basis.size();
    std::vector<std::vector<DualRational>> mat(n, std::vector<DualRational>(n));
    for (std::size_t j = 0; j < n; ++j) {
        ModuleState source = ModuleState::zero(ctx);
        source.add_term(basis[j], DualRational(Rational(1)));
        const ModuleState image = apply_operator(coeffs, source);
        for (const auto& [p, c] : image.terms()) {
            const auto it = index.find(p);
            if (it != index.end()) mat[it->second][j] = c;
        }
    }
    return mat;
}

} // namespace logsle
