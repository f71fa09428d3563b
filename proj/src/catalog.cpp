#include "cxgeo/catalog.hpp"

#include "cxgeo/errors.hpp"
#include "cxgeo/random.hpp"

#include <random>
#include <sstream>

namespace cxgeo {

namespace {

std::string fmt_params(std::initializer_list<double> values) {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  return os.str();
}

MetricJet jet_from(const RawComponents& raw) {
  MetricSample s{raw.gR, raw.gI};
  return MetricJet::zero(s);
}

// Row-1 potential metrics (uniform-b and t-dependent-potential): gR = I,
// gI(0, g) = A_g, gI(g, 0) = -A_g for g = 1..3.
RawComponents potential_components(const Eigen::Vector3d& a) {
  RawComponents r{Matrix::Identity(4, 4), Matrix::Zero(4, 4)};
  for (int g = 1; g < 4; ++g) {
    r.gI(0, g) = a(g - 1);
    r.gI(g, 0) = -a(g - 1);
  }
  return r;
}

struct TrigTerm {
  double coefficient;
  Vector kx;
  Vector kt;
  double phase;
};

using TrigEntry = std::vector<TrigTerm>;

double trig_value(const TrigEntry& e, const PhasePoint& p) {
  double v = 0.0;
  for (const auto& term : e) v += term.coefficient * std::sin(term.kx.dot(p.x) + term.kt.dot(p.t) + term.phase);
  return v;
}

// Derivative along x (which_t = false) or t (which_t = true) coordinate c.
double trig_derivative(const TrigEntry& e, const PhasePoint& p, int c, bool which_t) {
  double v = 0.0;
  for (const auto& term : e) {
    const double k = which_t ? term.kt(c) : term.kx(c);
    v += term.coefficient * k * std::cos(term.kx.dot(p.x) + term.kt.dot(p.t) + term.phase);
  }
  return v;
}

}  // namespace

MetricDefinition euclidean(int n) {
  if (n < 1) throw DimensionMismatch("euclidean metric needs n >= 1");
  MetricDefinition m;
  m.name = "euclidean";
  m.dimension = n;
  m.description = "n=" + std::to_string(n);
  m.components = [n](const PhasePoint&) {
    return RawComponents{Matrix::Identity(n, n), Matrix::Zero(n, n)};
  };
  m.analytic_jet = [n](const PhasePoint&) {
    return MetricJet::zero({Matrix::Identity(n, n), Matrix::Zero(n, n)});
  };
  return m;
}

MetricDefinition real_diagonal(double a) {
  MetricDefinition m;
  m.name = "real-diagonal";
  m.dimension = 4;
  m.description = "amplitude=" + fmt_params({a});
  auto components = [a](const PhasePoint& p) {
    Matrix gR = Matrix::Identity(4, 4);
    gR(1, 1) = 1.0 + a * std::sin(p.x(2));
    gR(2, 2) = 1.0 + a * std::cos(p.x(1));
    gR(3, 3) = 1.0 + a * std::sin(p.x(1) + p.x(2));
    return RawComponents{gR, Matrix::Zero(4, 4)};
  };
  m.components = components;
  m.analytic_jet = [a, components](const PhasePoint& p) {
    MetricJet j = jet_from(components(p));
    j.dx_gR(2, 1, 1) = a * std::cos(p.x(2));
    j.dx_gR(1, 2, 2) = -a * std::sin(p.x(1));
    const double c = a * std::cos(p.x(1) + p.x(2));
    j.dx_gR(1, 3, 3) = c;
    j.dx_gR(2, 3, 3) = c;
    return j;
  };
  return m;
}

MetricDefinition uniform_b(const std::array<double, 3>& b_in) {
  const Eigen::Vector3d b(b_in[0], b_in[1], b_in[2]);
  MetricDefinition m;
  m.name = "uniform-b";
  m.dimension = 4;
  m.description = "b=" + fmt_params({b_in[0], b_in[1], b_in[2]});
  m.components = [b](const PhasePoint& p) {
    const Eigen::Vector3d r(p.x(1), p.x(2), p.x(3));
    return potential_components(0.5 * b.cross(r));
  };
  m.analytic_jet = [b](const PhasePoint& p) {
    const Eigen::Vector3d r(p.x(1), p.x(2), p.x(3));
    MetricJet j = jet_from(potential_components(0.5 * b.cross(r)));
    // dA/dr_c = B x e_c / 2
    for (int c = 0; c < 3; ++c) {
      const Eigen::Vector3d dA = 0.5 * b.cross(Eigen::Vector3d::Unit(c));
      for (int g = 1; g < 4; ++g) {
        j.dx_gI(c + 1, 0, g) = dA(g - 1);
        j.dx_gI(c + 1, g, 0) = -dA(g - 1);
      }
    }
    return j;
  };
  return m;
}

MetricDefinition t_dependent_potential(const std::array<double, 3>& offset,
                                       const std::array<double, 3>& slope) {
  const Eigen::Vector3d a0(offset[0], offset[1], offset[2]);
  const Eigen::Vector3d e(slope[0], slope[1], slope[2]);
  MetricDefinition m;
  m.name = "t-dependent-potential";
  m.dimension = 4;
  m.description = "offset=" + fmt_params({offset[0], offset[1], offset[2]}) +
                  ";slope=" + fmt_params({slope[0], slope[1], slope[2]});
  m.components = [a0, e](const PhasePoint& p) { return potential_components(a0 + e * p.t(0)); };
  m.analytic_jet = [a0, e](const PhasePoint& p) {
    MetricJet j = jet_from(potential_components(a0 + e * p.t(0)));
    for (int g = 1; g < 4; ++g) {
      j.dt_gI(0, 0, g) = e(g - 1);
      j.dt_gI(0, g, 0) = -e(g - 1);
    }
    return j;
  };
  return m;
}

MetricDefinition random_trig(const RandomTrigOptions& o) {
  const int n = o.dimension;
  if (n < 1) throw DimensionMismatch("random-trig metric needs n >= 1");
  std::mt19937_64 rng(o.seed);
  const int kmax = o.max_wavenumber;
  auto wavenumber = [&rng, kmax]() {
    return static_cast<double>(static_cast<int>(rng() % static_cast<std::uint64_t>(2 * kmax + 1)) - kmax);
  };
  auto make_entry = [&]() {
    TrigEntry entry;
    double total = 0.0;
    for (int m = 0; m < o.terms; ++m) {
      TrigTerm term;
      term.coefficient = 2.0 * unit_uniform(rng) - 1.0;
      term.kx = Vector(n);
      term.kt = Vector::Zero(n);
      for (int c = 0; c < n; ++c) term.kx(c) = wavenumber();
      for (int c = 0; c < n; ++c) {
        const double k = wavenumber();
        if (o.t_dependent) term.kt(c) = k;
      }
      term.phase = 2.0 * 3.141592653589793 * unit_uniform(rng);
      total += std::abs(term.coefficient);
      entry.push_back(std::move(term));
    }
    // Normalize so that |entry| <= 1 everywhere.
    if (total > 0.0)
      for (auto& term : entry) term.coefficient /= total;
    return entry;
  };

  // Upper triangles only; completion by (anti)symmetry.
  std::vector<TrigEntry> real_entries;
  std::vector<TrigEntry> imag_entries;
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) real_entries.push_back(make_entry());
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) imag_entries.push_back(make_entry());

  const double a = o.amplitude;
  auto components = [n, a, real_entries, imag_entries](const PhasePoint& p) {
    RawComponents r{Matrix::Identity(n, n), Matrix::Zero(n, n)};
    std::size_t ri = 0;
    std::size_t ii = 0;
    for (int i = 0; i < n; ++i) {
      for (int k = i; k < n; ++k) {
        const double v = a * trig_value(real_entries[ri++], p);
        r.gR(i, k) += v;
        if (k != i) r.gR(k, i) += v;
      }
      for (int k = i + 1; k < n; ++k) {
        const double v = a * trig_value(imag_entries[ii++], p);
        r.gI(i, k) = v;
        r.gI(k, i) = -v;
      }
    }
    return r;
  };

  MetricDefinition m;
  m.name = "random-trig";
  m.dimension = n;
  m.description = "seed=" + std::to_string(o.seed) + ";amplitude=" + fmt_params({o.amplitude}) +
                  ";n=" + std::to_string(n) + ";t_dependent=" + (o.t_dependent ? "1" : "0") +
                  ";kmax=" + std::to_string(o.max_wavenumber) + ";terms=" + std::to_string(o.terms);
  m.components = components;
  m.analytic_jet = [n, a, real_entries, imag_entries, components](const PhasePoint& p) {
    MetricJet j = jet_from(components(p));
    for (int c = 0; c < n; ++c) {
      std::size_t ri = 0;
      std::size_t ii = 0;
      for (int i = 0; i < n; ++i) {
        for (int k = i; k < n; ++k) {
          const TrigEntry& e = real_entries[ri++];
          const double dx = a * trig_derivative(e, p, c, false);
          const double dt = a * trig_derivative(e, p, c, true);
          j.dx_gR(c, i, k) = j.dx_gR(c, k, i) = dx;
          j.dt_gR(c, i, k) = j.dt_gR(c, k, i) = dt;
        }
        for (int k = i + 1; k < n; ++k) {
          const TrigEntry& e = imag_entries[ii++];
          const double dx = a * trig_derivative(e, p, c, false);
          const double dt = a * trig_derivative(e, p, c, true);
          j.dx_gI(c, i, k) = dx;
          j.dx_gI(c, k, i) = -dx;
          j.dt_gI(c, i, k) = dt;
          j.dt_gI(c, k, i) = -dt;
        }
      }
    }
    return j;
  };
  return m;
}

std::vector<MetricDefinition> catalog_metrics() {
  return {euclidean(4), real_diagonal(), uniform_b(), t_dependent_potential(), random_trig()};
}

std::vector<std::string> catalog_names() {
  return {"euclidean", "real-diagonal", "uniform-b", "t-dependent-potential", "random-trig"};
}

namespace {

class ParamReader {
 public:
  ParamReader(const std::string& metric, const CatalogParams& params)
      : metric_(metric), params_(params) {}

  double scalar(const std::string& key, double fallback) {
    auto it = take(key);
    if (!it) return fallback;
    if (it->size() != 1) throw DimensionMismatch(where(key) + " expects a single number");
    return (*it)[0];
  }

  std::array<double, 3> vec3(const std::string& key, std::array<double, 3> fallback) {
    auto it = take(key);
    if (!it) return fallback;
    if (it->size() != 3) throw DimensionMismatch(where(key) + " expects 3 numbers");
    return {(*it)[0], (*it)[1], (*it)[2]};
  }

  void finish() const {
    for (const auto& [key, value] : params_)
      if (!used_.count(key)) throw UnknownIdentifier(where(key) + " is not a parameter");
  }

 private:
  const std::vector<double>* take(const std::string& key) {
    auto it = params_.find(key);
    if (it == params_.end()) return nullptr;
    used_[key] = true;
    return &it->second;
  }
  std::string where(const std::string& key) const {
    return "'" + key + "' of catalog metric '" + metric_ + "'";
  }

  std::string metric_;
  const CatalogParams& params_;
  std::map<std::string, bool> used_;
};

}  // namespace

MetricDefinition catalog_metric(const std::string& name, const CatalogParams& params) {
  ParamReader r(name, params);
  MetricDefinition m;
  if (name == "euclidean") {
    m = euclidean(static_cast<int>(r.scalar("n", 4)));
  } else if (name == "real-diagonal") {
    m = real_diagonal(r.scalar("amplitude", 0.2));
  } else if (name == "uniform-b") {
    m = uniform_b(r.vec3("b", {0.0, 0.0, 1.0}));
  } else if (name == "t-dependent-potential") {
    const auto offset = r.vec3("offset", {0.0, 0.0, 0.0});
    const auto slope = r.vec3("slope", {0.1, 0.0, 0.0});
    m = t_dependent_potential(offset, slope);
  } else if (name == "random-trig") {
    RandomTrigOptions o;
    o.seed = static_cast<std::uint64_t>(r.scalar("seed", static_cast<double>(o.seed)));
    o.amplitude = r.scalar("amplitude", o.amplitude);
    o.dimension = static_cast<int>(r.scalar("n", o.dimension));
    o.t_dependent = r.scalar("t_dependent", 1.0) != 0.0;
    o.max_wavenumber = static_cast<int>(r.scalar("max_wavenumber", o.max_wavenumber));
    o.terms = static_cast<int>(r.scalar("terms", o.terms));
    m = random_trig(o);
  } else {
    throw UnknownIdentifier("no catalog metric named '" + name + "'");
  }
  r.finish();
  return m;
}

}  // namespace cxgeo
