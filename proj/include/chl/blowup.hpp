#pragma once

#include <vector>

#include "chl/data_factory.hpp"
#include "chl/field.hpp"

namespace chl {

/// c_δ = 1 − e^{−4δ} ∈ (0,1).  Throws NonPositiveDelta.
double c_delta(double delta);

/// t_k = 4δ·Σ_{j=1..k} 3^{−2j} = (δ/2)(1 − 9^{−k}); t_0 = 0, limit δ/2.
/// Throws NegativeK / NonPositiveDelta.
double t_k(int k, double delta);

/// A quantity of the form coeff·3^k + resid held without collapsing 3^k:
/// the recursion's exponents overflow double for k ≳ 600 and lose precision
/// long before, so certificates keep the split exact and collapse only for
/// display.
struct Log3Split {
    int k = 0;
    double coeff = 0.0; ///< multiplies 3^k
    double resid = 0.0; ///< additive remainder

    /// Collapse to a double (±inf when 3^k·coeff overflows).
    double value() const;
};

/// log α_k(t) split as coeff·3^k + resid, where
/// α_k(t) = 3^{3/2+k−3^{k+1}/2} c_δ^{(3^k−1)/2} e^{−3^k t} 𝟙_{t≥t_k}:
/// coeff = −(3/2)ln3 + (1/2)ln c_δ − t and resid = (3/2+k)ln3 − (1/2)ln c_δ.
/// For t < t_k the bound is vacuous: coeff = resid = −infinity.
Log3Split log_alpha_split(int k, double t, double delta);

/// Collapsed log α_k(t) (−infinity below t_k).
double log_alpha_k(int k, double t, double delta);

/// Sharpness margin of the induction inequality
///   ∫_{t_{k−1}}^t e^{−3^k s} e^{3^{2k}(s−t)} ds ≥ 3^{−2k}·c_δ·e^{−3^k t}
/// at one probe time: log LHS − log RHS, evaluated in cancellation-free
/// closed form (finite for every k ≥ 1).  Throws ProbeBelowTk for t < t_k.
double induction_margin(int k, double delta, double t);

/// True iff the induction inequality holds (margin ≥ −1e−12) at every probe.
bool verify_induction_step(int k, double delta, const std::vector<double>& t_probes);

/// Amplitude threshold A ≥ 3^{3/2}·c_δ^{−1/2}·e^{δ/2}/‖ŵ‖_{L¹}.
double a_min(double delta, double w_l1);

/// Inputs of the amplitude-recursion certificate.
struct RecursionParams {
    double delta = 0.5;    ///< lower-bound window parameter, > 0
    double A = 1.0;        ///< datum amplitude against the bump, > 0
    double log_w_l1 = 0.0; ///< log ‖ŵ‖_{L¹}
    int k_max = 40;        ///< table depth, ≥ 1
};

enum class CertVerdict { Certified, NotCertified };

struct CertRow {
    int k = 0;
    double t_k = 0.0;
    double L_k = 0.0;      ///< collapsed log lower bound of sup û at t = δ/2
    Log3Split split;       ///< exact split form of L_k
};

/// Output of certify(): the per-k table of log lower bounds
/// L_k = 3^k(ln A + log ‖ŵ‖₁) + log α_k(δ/2), the closed-form threshold and
/// the verdict.  L_k = 3^k·c + r_k with c = ln(A/a_min) exactly, so the
/// closed criterion (A ≥ a_min) and the table growth must agree; a
/// contradiction between the two paths throws InternalInconsistency.
struct BlowupCertificate {
    RecursionParams params;
    std::vector<CertRow> per_k;
    CertVerdict verdict = CertVerdict::NotCertified;
    double margin = 0.0;     ///< largest collapsed L_k in the table
    double a_min = 0.0;      ///< threshold amplitude at ‖ŵ‖₁ = e^{log_w_l1}
    double log_coeff = 0.0;  ///< c = ln A − ln a_min (growth rate per 3^k)
};

/// Evaluate the recursion table and both verdict paths.
BlowupCertificate certify(const RecursionParams& params);

/// τ_N = ε_N³ Σ_{k=1..N−1} [2^{2k−7/3}/(3·2^{2k+1}−1)]·η_k²η_{k+1}·
///        e^{−2δ}(1 − e^{(δ/2)(1−3·2^{2k+1})}),
/// summed in the overflow-free form 2^{−10/3}/(3 − 2^{−(2k+1)}) with
/// compensated accumulation.  Requires N ≥ 16 (NTooSmall).
double tau_N(int N, double delta);

/// k-th summand of τ_N without the ε_N³ prefactor (exposed for term-ratio
/// diagnostics).
double tau_summand(int k, double delta);

/// Result of chaining the oscillating datum through the convolution step:
/// û_N(δ/2) ≥ τ_N·ĝ with ĝ = (ŵ*ŵ*ŵ)(·+e₁), then the amplitude threshold
/// applied to the new datum with amplitude τ_N against ĝ.
struct Thm33Certificate {
    int N = 0;
    double delta = 0.0;
    double tau = 0.0;          ///< τ_N
    double w_l1 = 0.0;         ///< ‖ŵ‖_{L¹} on the grid
    double g_l1 = 0.0;         ///< ‖ĝ‖_{L¹} on the grid
    double g_mass_rel_gap = 0.0; ///< |g_l1 − w_l1³| / w_l1³ (mass identity check)
    bool support_ok = false;   ///< ĝ vanishes outside B₁(0) on the lattice
    double a_min_g = 0.0;      ///< threshold a_min(δ, g_l1) the chain must beat
    BlowupCertificate chain;   ///< certify() with A = τ_N, w = ĝ
};

/// Run the full chain for the N-shell oscillating datum built from `bump` on
/// `grid`.  The convolved spectrum ĝ is computed by the alias-free grid
/// pipeline and its support is verified, not assumed.  The construction needs
/// a one-sided bump (a single Fourier ball in the ξ₁ > 0 half-space), so
/// `bump.evenize` is overridden to false throughout.  Requires N ≥ 16 and a
/// box making the unit frequency shift a lattice translation.
Thm33Certificate certify_theorem33(int N, double delta, const BumpSpec& bump,
                                   const Grid& grid, int k_max = 40);

/// ĝ = (ŵ*ŵ*ŵ)(·+e₁) on the grid (exposed for the support diagnostics).
/// Uses the one-sided bump regardless of `bump.evenize`; the symmetrized
/// spectrum would push the shifted support outside the unit ball.
SpectralField convolved_shifted_bump(const BumpSpec& bump, const Grid& grid);

} // namespace chl
