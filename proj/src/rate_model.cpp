#include "misc/rate_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace misc {

RateModel::RateModel() : delta(std::numbers::ln2) {}

RateModel::RateModel(std::vector<double> gammas_, std::vector<double> rs_,
                     std::vector<double> gs_)
    : gammas(std::move(gammas_)),
      rs(std::move(rs_)),
      gs(std::move(gs_)),
      delta(std::numbers::ln2) {
  validate();
}

RateModel RateModel::from_tilde(const std::vector<double>& gamma_tilde,
                                const std::vector<double>& r_tilde,
                                const std::vector<double>& g) {
  std::vector<double> gammas(gamma_tilde.size()), rs(r_tilde.size());
  for (std::size_t i = 0; i < gamma_tilde.size(); ++i)
    gammas[i] = gamma_tilde[i] * std::numbers::ln2;
  for (std::size_t i = 0; i < r_tilde.size(); ++i) rs[i] = r_tilde[i] * std::numbers::ln2;
  return RateModel(std::move(gammas), std::move(rs), g);
}

void RateModel::validate() const {
  if (gammas.size() != rs.size())
    throw std::invalid_argument("RateModel: gamma/r length mismatch");
  for (double v : gammas)
    if (v <= 0.0) throw std::invalid_argument("RateModel: gamma rates must be positive");
  for (double v : rs)
    if (v <= 0.0) throw std::invalid_argument("RateModel: r rates must be positive");
  for (double v : gs)
    if (v <= 0.0) throw std::invalid_argument("RateModel: g rates must be positive");
  if (C_work <= 0.0 || C_error <= 0.0)
    throw std::invalid_argument("RateModel: constants must be positive");
}

}  // namespace misc
