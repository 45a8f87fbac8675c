#include "aufh/regret.hpp"

namespace aufh {

double pseudo_regret_increment(const Strategy& chosen, const ArrayXd& expected_losses) {
    double chosen_sum = 0.0;
    for (int f : chosen.members) chosen_sum += expected_losses[f];
    return chosen_sum - best_subset_sum(expected_losses, chosen.size());
}

}  // namespace aufh
