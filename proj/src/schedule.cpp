#include "aufh/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aufh {

double beta(std::int64_t t, int n) {
    return 0.5 * std::sqrt(std::log(static_cast<double>(n)) / (static_cast<double>(t) * n));
}

double Schedule::eta(std::int64_t t, int n) const {
    if (eta_override) return *eta_override;
    switch (variant) {
        case Variant::Acc: return 1.0;
        case Variant::Emp:
        case Variant::KnownGap: return beta(t, n);
    }
    return beta(t, n);
}

Schedule Schedule::emp(double c) {
    Schedule s;
    s.variant = Variant::Emp;
    s.xi_form = XiForm::LogSquared;
    s.c = c;
    return s;
}

Schedule Schedule::acc(double c) {
    Schedule s = emp(c);
    s.variant = Variant::Acc;
    return s;
}

Schedule Schedule::emp_experimental() {
    Schedule s;
    s.variant = Variant::Emp;
    s.xi_form = XiForm::GapScaledLog;
    s.c = 1.0 / 32.0;
    return s;
}

Schedule Schedule::acc_experimental() {
    Schedule s = emp_experimental();
    s.variant = Variant::Acc;
    return s;
}

Schedule Schedule::known_gap(ArrayXd gaps, double c) {
    Schedule s;
    s.variant = Variant::KnownGap;
    s.xi_form = XiForm::GapScaledLog;
    s.c = c;
    s.known_gaps = std::move(gaps);
    return s;
}

void Schedule::validate(int n) const {
    if (!(c > 0.0)) throw std::invalid_argument("schedule constant c must be > 0");
    if (variant == Variant::KnownGap) {
        if (!known_gaps) throw std::invalid_argument("known-gap schedule requires per-channel gaps");
        if (known_gaps->size() != n)
            throw std::invalid_argument("known_gaps size does not match channel count");
        if ((*known_gaps < 0.0).any() || (*known_gaps > 1.0).any())
            throw std::invalid_argument("known gaps must lie in [0,1]");
    }
}

std::string Schedule::id() const {
    switch (variant) {
        case Variant::Emp: return xi_form == XiForm::GapScaledLog ? "emp-exp" : "emp";
        case Variant::Acc: return xi_form == XiForm::GapScaledLog ? "acc-exp" : "acc";
        case Variant::KnownGap: return "known-gap";
    }
    return "?";
}

double xi_value(const Schedule& s, std::int64_t t, double gap) {
    if (gap <= 0.0) return std::numeric_limits<double>::infinity();
    const double td2 = static_cast<double>(t) * gap * gap;
    switch (s.xi_form) {
        case XiForm::GapScaledLog: {
            if (td2 < 1.0) return 0.0;  // ln would be negative; exploration floored at 0
            return s.c * std::log(td2) / td2;
        }
        case XiForm::LogSquared: {
            const double lt = std::log(static_cast<double>(t));
            return s.c * lt * lt / td2;
        }
    }
    return 0.0;
}

double epsilon_value(const Schedule& s, std::int64_t t, int n, double gap) {
    const double cap = 1.0 / (2.0 * n);
    return std::min({cap, beta(t, n), xi_value(s, t, gap)});
}

ArrayXd epsilons(const Schedule& s, std::int64_t t, int n, const ArrayXd& gaps) {
    const double cap = std::min(1.0 / (2.0 * n), beta(t, n));
    ArrayXd eps(n);
    for (int f = 0; f < n; ++f) eps[f] = std::min(cap, xi_value(s, t, gaps[f]));
    return eps;
}

}  // namespace aufh
