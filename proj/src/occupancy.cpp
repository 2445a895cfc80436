#include "jsqd/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "jsqd/fixed_point.hpp"

namespace jsqd {

void Occupancy::validate() const {
  if (n < 1) throw std::invalid_argument("Occupancy: n must be positive");
  std::int64_t prev = n;
  for (std::int64_t c : counts) {
    if (c < 0 || c > prev) throw std::invalid_argument("Occupancy: counts must be nonincreasing within [0, n]");
    prev = c;
  }
}

double Occupancy::fraction(std::size_t i) const {
  return static_cast<double>(count(i)) / static_cast<double>(n);
}

std::int64_t Occupancy::jobs() const {
  std::int64_t total = 0;
  for (std::int64_t c : counts) total += c;
  return total;
}

std::vector<double> Occupancy::fractions(std::size_t coords) const {
  std::vector<double> g(coords);
  for (std::size_t i = 0; i < coords; ++i) g[i] = fraction(i + 1);
  return g;
}

Occupancy Occupancy::from_fractions(std::int64_t n, const std::vector<double>& target) {
  Occupancy occ;
  occ.n = n;
  occ.counts.resize(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double x = target[i];
    if (!(x >= -kInputTolerance && x <= 1.0 + kInputTolerance)) {
      throw std::invalid_argument("initial occupancy values must lie in [0,1]");
    }
    occ.counts[i] = std::llround(std::clamp(x, 0.0, 1.0) * static_cast<double>(n));
  }
  for (std::size_t i = target.size(); i-- > 1;) {
    occ.counts[i - 1] = std::max(occ.counts[i - 1], occ.counts[i]);
  }
  while (!occ.counts.empty() && occ.counts.back() == 0) occ.counts.pop_back();
  occ.validate();
  return occ;
}

std::vector<double> read_fraction_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open init file '" + path + "'");
  std::vector<double> out;
  std::string token;
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  for (char& ch : text) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream ss(text);
  while (ss >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw std::runtime_error("init file '" + path + "': bad number '" + token + "'");
    out.push_back(v);
  }
  return out;
}

InitSpec InitSpec::parse(const std::string& text) {
  InitSpec spec;
  if (text == "empty" || text == "zero") return spec;
  if (text == "mu") {
    spec.kind = Kind::NearMu;
    return spec;
  }
  if (text.rfind("fixed:", 0) == 0) {
    spec.kind = Kind::FluidPoint;
    const std::string rest = text.substr(6);
    const auto colon = rest.find(':');
    try {
      const long k = std::stol(rest.substr(0, colon));
      if (k < 0) throw std::invalid_argument("negative");
      spec.k = static_cast<std::size_t>(k);
      if (colon != std::string::npos) spec.gamma_coeff = std::stod(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad init '" + text + "' (expected fixed:K[:G])");
    }
    if (!(spec.gamma_coeff >= 0.0 && spec.gamma_coeff < 1.0)) {
      throw std::invalid_argument("init fixed:K:G needs G in [0,1)");
    }
    return spec;
  }
  if (text.rfind("file:", 0) == 0) {
    spec.kind = Kind::Explicit;
    spec.values = read_fraction_file(text.substr(5));
    return spec;
  }
  throw std::invalid_argument("unknown init '" + text + "' (expected empty|fixed:K[:G]|mu|file:PATH)");
}

std::vector<double> InitSpec::target(const SystemParams& params) const {
  switch (kind) {
    case Kind::Empty: return {};
    case Kind::FluidPoint: return fluid_fixed_point(k, gamma_coeff);
    case Kind::NearMu: return mu_sequence(params).mu;
    case Kind::Explicit: return values;
  }
  return {};
}

Occupancy InitSpec::resolve(const SystemParams& params) const {
  params.validate();
  return Occupancy::from_fractions(params.n, target(params));
}

}  // namespace jsqd
