#pragma once

// Parameter schedules for AUFH-EXP3++. Two levers: the learning rate eta_t
// drives the adversarial guarantee, the per-channel exploration parameter
// xi_t(f) drives the stochastic one. Both are combined through
//
//   beta_t      = (1/2) * sqrt(ln n / (t n))
//   epsilon_t(f) = min{ 1/(2n), beta_t, xi_t(f) }
//
// xi comes in two functional forms:
//   GapScaledLog : c * ln(t*gap^2) / (t*gap^2)   (known-gap schedule; also the
//                  empirical-gap form used in experiments with c = 1/32)
//   LogSquared   : c * (ln t)^2 / (t*gap^2)      (empirical-gap schedule, c >= 18)
//
// A zero gap maps xi to +inf (the min-clamp absorbs it); a log argument < 1
// floors xi at 0 so exploration probabilities never go negative.

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "aufh/types.hpp"

namespace aufh {

enum class Variant { Emp, Acc, KnownGap };
enum class XiForm { LogSquared, GapScaledLog };

struct Schedule {
    Variant variant = Variant::Emp;
    XiForm xi_form = XiForm::LogSquared;
    double c = 18.0;
    std::optional<double> eta_override;
    std::optional<ArrayXd> known_gaps;  // required by Variant::KnownGap

    // eta_t = beta_t (Emp), 1 (Acc), or the override.
    double eta(std::int64_t t, int n) const;

    static Schedule emp(double c = 18.0);
    static Schedule acc(double c = 18.0);
    // The schedule used in the experiments: xi = ln(t*gap^2) / (32 t*gap^2).
    static Schedule emp_experimental();
    static Schedule acc_experimental();
    static Schedule known_gap(ArrayXd gaps, double c = 18.0);

    void validate(int n) const;
    std::string id() const;
};

double beta(std::int64_t t, int n);

// xi_t(f) for one channel given the gap in force for round t
// (the known gap, or the estimate held after round t-1).
double xi_value(const Schedule& s, std::int64_t t, double gap);

// epsilon_t over all channels; `gaps` are the per-channel gaps in force.
ArrayXd epsilons(const Schedule& s, std::int64_t t, int n, const ArrayXd& gaps);

double epsilon_value(const Schedule& s, std::int64_t t, int n, double gap);

}  // namespace aufh
