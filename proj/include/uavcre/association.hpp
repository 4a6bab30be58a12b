#pragma once

#include <string>

#include "network.hpp"
#include "quadrature.hpp"

namespace uavcre {

/// beta = zeta * beta0 / (1 + (beta0 - 1) exp(growth * (1 - tau))).
/// Sigmoid in the SE ratio tau: zeta at tau = 1, saturating at zeta * beta0.
double bias_factor(double beta0, double growth_alpha, double zeta, double tau);

/// Ratio of the mean received powers of the two bands' nearest UAVs,
/// P_lf K_lf E[r_lf^-a_lf] / (P_m G_M K_m E[r_m^-a_m]).
double zeta(const NetworkParams& params, const QuadratureSpec& spec = {});

/// SE_m / SE_lf with each band's SE taken over its own nearest-UAV law.
double se_ratio_tau(const NetworkParams& params, const QuadratureSpec& spec = {});
double se_ratio_tau(double se_lf, double se_m);

/// Adaptive range-expansion bias. Immutable once built.
class CrePolicy
{
  public:
    CrePolicy(double beta0, double growth_alpha, double zeta, double tau);

    /// Computes zeta and tau from the network statistics.
    static CrePolicy from_network(const NetworkParams& params, double beta0, double growth_alpha,
                                  const QuadratureSpec& spec = {});

    double beta0() const noexcept { return beta0_; }
    double growth_alpha() const noexcept { return growth_; }
    double zeta() const noexcept { return zeta_; }
    double tau() const noexcept { return tau_; }
    double beta() const noexcept { return beta_; }

  private:
    double beta0_, growth_, zeta_, tau_, beta_;
};

struct AssociationOutcome
{
    Band band = Band::LowFrequency;
    double serving_distance = 0.0;
};

/// mmWave iff beta * P_m G_M K_m d_m^-a_m >= P_lf K_lf d_lf^-a_lf (ties go to mmWave).
AssociationOutcome associate(double dist_lf, double dist_m, double beta,
                             const NetworkParams& params);

/// Probability the typical user picks mmWave under bias beta:
/// Int_h^inf (1 - F_lf(max(h, eta^(1/a_lf) r^(a_m/a_lf)))) f_m(r) dr,
/// eta = P_lf K_lf / (beta P_m G_M K_m).
double assoc_prob_mmwave(double beta, const NetworkParams& params, const QuadratureSpec& spec = {});

/// Which bias the simulator and sweeps apply.
struct AssociationPolicy
{
    enum class Kind { Cre, Map, FixedBeta };
    Kind kind = Kind::Cre;
    double fixed_beta = 1.0;

    static AssociationPolicy cre() { return {Kind::Cre, 1.0}; }
    static AssociationPolicy map() { return {Kind::Map, 1.0}; }
    static AssociationPolicy fixed(double beta) { return {Kind::FixedBeta, beta}; }

    /// "cre", "map" or "beta=<float>".
    static AssociationPolicy parse(const std::string& text);
    std::string to_string() const;

    /// Bias to apply; `cre_beta` is used only for Kind::Cre.
    double beta(double cre_beta) const;
};

} // namespace uavcre
