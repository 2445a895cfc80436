#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "jsqd/ctmc.hpp"

namespace jsqd {

namespace {

constexpr std::size_t kDenseLimit = 2000;

void enumerate(std::int64_t n, std::size_t cap, std::vector<std::int64_t>& cur,
               std::vector<std::vector<std::int64_t>>& out) {
  if (cur.size() == cap) {
    out.push_back(cur);
    if (out.size() > kGeneratorStateCap) throw std::invalid_argument("brute_force_generator: state space too large");
    return;
  }
  const std::int64_t top = cur.empty() ? n : cur.back();
  for (std::int64_t v = 0; v <= top; ++v) {
    cur.push_back(v);
    enumerate(n, cap, cur, out);
    cur.pop_back();
  }
}

}  // namespace

GeneratorResult brute_force_generator(const SystemParams& params, std::size_t level_cap) {
  params.validate();
  if (level_cap < 1) throw std::invalid_argument("brute_force_generator: level_cap >= 1");
  GeneratorResult res;
  std::vector<std::int64_t> cur;
  enumerate(params.n, level_cap, cur, res.states);

  std::map<std::vector<std::int64_t>, std::size_t> index;
  for (std::size_t s = 0; s < res.states.size(); ++s) index.emplace(res.states[s], s);

  const LatticeChoiceTable beta(params.n, params.d);
  const double arrival = static_cast<double>(params.n) * params.lambda;
  std::vector<Eigen::Triplet<double>> entries;
  std::vector<double> exit(res.states.size(), 0.0);
  for (std::size_t s = 0; s < res.states.size(); ++s) {
    const auto& c = res.states[s];
    auto at = [&](std::size_t i) -> std::int64_t {
      if (i == 0) return params.n;
      return i <= level_cap ? c[i - 1] : 0;
    };
    for (std::size_t i = 1; i <= level_cap; ++i) {
      const double up = arrival * (beta[at(i - 1)] - beta[at(i)]);
      if (up > 0.0 && at(i) < at(i - 1)) {
        auto next = c;
        ++next[i - 1];
        entries.emplace_back(static_cast<int>(s), static_cast<int>(index.at(next)), up);
        exit[s] += up;
      }
      const auto down = static_cast<double>(at(i) - at(i + 1));
      if (down > 0.0) {
        auto next = c;
        --next[i - 1];
        entries.emplace_back(static_cast<int>(s), static_cast<int>(index.at(next)), down);
        exit[s] += down;
      }
    }
  }
  res.transitions = entries.size();
  for (std::size_t s = 0; s < res.states.size(); ++s) {
    entries.emplace_back(static_cast<int>(s), static_cast<int>(s), -exit[s]);
  }

  const auto size = static_cast<int>(res.states.size());
  // Solve Q^T pi = 0 with the last equation replaced by sum(pi) = 1.
  std::vector<Eigen::Triplet<double>> transposed;
  transposed.reserve(entries.size() + res.states.size());
  for (const auto& e : entries) {
    if (e.col() != size - 1) transposed.emplace_back(e.col(), e.row(), e.value());
  }
  for (int s = 0; s < size; ++s) transposed.emplace_back(size - 1, s, 1.0);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size);
  rhs(size - 1) = 1.0;

  Eigen::SparseMatrix<double> a(size, size);
  a.setFromTriplets(transposed.begin(), transposed.end());
  Eigen::VectorXd pi;
  if (res.states.size() <= kDenseLimit) {
    pi = Eigen::MatrixXd(a).fullPivLu().solve(rhs);
  } else {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw std::runtime_error("brute_force_generator: factorisation failed");
    pi = lu.solve(rhs);
  }
  res.stationary.assign(pi.data(), pi.data() + size);

  Eigen::SparseMatrix<double> q(size, size);
  q.setFromTriplets(entries.begin(), entries.end());
  const Eigen::VectorXd flow = q.transpose() * pi;
  res.residual = flow.cwiseAbs().maxCoeff();
  return res;
}

}  // namespace jsqd
