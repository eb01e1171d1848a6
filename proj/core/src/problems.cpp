#include "modo/problems.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace modo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Problem boxed(std::string name, int n, int m, double lo, double hi) {
  Problem p;
  p.name = std::move(name);
  p.n = n;
  p.m = m;
  p.lower = Vector::Constant(n, lo);
  p.upper = Vector::Constant(n, hi);
  return p;
}

/// Bi-objective quadratic pair (a x1^2 + b x2^2, c (x1-50)^2 + d (x2+50)^2).
Problem make_imbalance(std::string name, double a, double b, double c,
                       double d) {
  Problem p = boxed(std::move(name), 2, 2, -2.0, 2.0);
  p.value_oracle = [=](const Vector& x) {
    Vector f(2);
    f << a * x(0) * x(0) + b * x(1) * x(1),
        c * (x(0) - 50.0) * (x(0) - 50.0) + d * (x(1) + 50.0) * (x(1) + 50.0);
    return f;
  };
  p.jacobian_oracle = [=](const Vector& x) {
    Matrix j(2, 2);
    j << 2.0 * a * x(0), 2.0 * b * x(1),
        2.0 * c * (x(0) - 50.0), 2.0 * d * (x(1) + 50.0);
    return j;
  };
  return p;
}

/// ((1/n) sum x_i^2, (1/n) sum (x_i - 2)^2).
Problem make_jos1(std::string name, int n, double bound) {
  Problem p = boxed(std::move(name), n, 2, -bound, bound);
  p.value_oracle = [n](const Vector& x) {
    Vector f(2);
    f << x.squaredNorm() / n, (x.array() - 2.0).matrix().squaredNorm() / n;
    return f;
  };
  p.jacobian_oracle = [n](const Vector& x) {
    Matrix j(2, x.size());
    j.row(0) = (2.0 / n) * x.transpose();
    j.row(1) = (2.0 / n) * (x.array() - 2.0).matrix().transpose();
    return j;
  };
  return p;
}

/// f1 = lam((x1-2)^2 + (x2-2)^2) + (1-lam)((x1-2)^4 + (x2-2)^8),
/// f2 = (x1 + 2 lam)^2 + (x2 + 2 lam)^2.
Problem make_wit(std::string name, double lam) {
  Problem p = boxed(std::move(name), 2, 2, -2.0, 2.0);
  p.value_oracle = [lam](const Vector& x) {
    const double u = x(0) - 2.0;
    const double v = x(1) - 2.0;
    const double a = x(0) + 2.0 * lam;
    const double b = x(1) + 2.0 * lam;
    Vector f(2);
    f << lam * (u * u + v * v) +
             (1.0 - lam) * (std::pow(u, 4) + std::pow(v, 8)),
        a * a + b * b;
    return f;
  };
  p.jacobian_oracle = [lam](const Vector& x) {
    const double u = x(0) - 2.0;
    const double v = x(1) - 2.0;
    Matrix j(2, 2);
    j << 2.0 * lam * u + 4.0 * (1.0 - lam) * std::pow(u, 3),
        2.0 * lam * v + 8.0 * (1.0 - lam) * std::pow(v, 7),
        2.0 * (x(0) + 2.0 * lam), 2.0 * (x(1) + 2.0 * lam);
    return j;
  };
  return p;
}

/// (x1, g(x2)/x1) with g(x2) = 2 - exp(-((x2-0.2)/0.004)^2)
///                             - 0.8 exp(-((x2-0.6)/0.4)^2).
/// The quotient is only meaningful on x1 > 0; outside that domain the second
/// objective is reported as NaN so line searches reject such trial points.
Problem make_deb() {
  Problem p = boxed("Deb", 2, 2, 0.1, 1.0);
  const auto g = [](double x2) {
    const double u = (x2 - 0.2) / 0.004;
    const double v = (x2 - 0.6) / 0.4;
    return 2.0 - std::exp(-u * u) - 0.8 * std::exp(-v * v);
  };
  const auto gprime = [](double x2) {
    const double u = (x2 - 0.2) / 0.004;
    const double v = (x2 - 0.6) / 0.4;
    return std::exp(-u * u) * 2.0 * u / 0.004 +
           0.8 * std::exp(-v * v) * 2.0 * v / 0.4;
  };
  p.value_oracle = [g](const Vector& x) {
    Vector f(2);
    f(0) = x(0);
    f(1) = x(0) > 0.0 ? g(x(1)) / x(0) : kNaN;
    return f;
  };
  p.jacobian_oracle = [g, gprime](const Vector& x) {
    Matrix j(2, 2);
    j(0, 0) = 1.0;
    j(0, 1) = 0.0;
    if (x(0) > 0.0) {
      j(1, 0) = -g(x(1)) / (x(0) * x(0));
      j(1, 1) = gprime(x(1)) / x(0);
    } else {
      j(1, 0) = kNaN;
      j(1, 1) = kNaN;
    }
    return j;
  };
  return p;
}

/// f1 = x1^4 + x2^4 - x1^2 + x2^2 - 10 x1 x2 + 0.25 x1 + 20,
/// f2 = (x1-1)^2 + x2^2.
Problem make_pnr() {
  Problem p = boxed("PNR", 2, 2, -2.0, 2.0);
  p.value_oracle = [](const Vector& x) {
    const double x1 = x(0), x2 = x(1);
    Vector f(2);
    f << std::pow(x1, 4) + std::pow(x2, 4) - x1 * x1 + x2 * x2 -
             10.0 * x1 * x2 + 0.25 * x1 + 20.0,
        (x1 - 1.0) * (x1 - 1.0) + x2 * x2;
    return f;
  };
  p.jacobian_oracle = [](const Vector& x) {
    const double x1 = x(0), x2 = x(1);
    Matrix j(2, 2);
    j << 4.0 * std::pow(x1, 3) - 2.0 * x1 - 10.0 * x2 + 0.25,
        4.0 * std::pow(x2, 3) + 2.0 * x2 - 10.0 * x1,
        2.0 * (x1 - 1.0), 2.0 * x2;
    return j;
  };
  return p;
}

/// f1 = sum x_i^2, f2 = 3 x1 + 2 x2 - x3/3 + 0.01 (x4 - x5)^3.
Problem make_dd1() {
  Problem p = boxed("DD1", 5, 2, -20.0, 20.0);
  p.value_oracle = [](const Vector& x) {
    const double w = x(3) - x(4);
    Vector f(2);
    f << x.squaredNorm(),
        3.0 * x(0) + 2.0 * x(1) - x(2) / 3.0 + 0.01 * std::pow(w, 3);
    return f;
  };
  p.jacobian_oracle = [](const Vector& x) {
    const double w = x(3) - x(4);
    Matrix j(2, 5);
    j.row(0) = 2.0 * x.transpose();
    j.row(1) << 3.0, 2.0, -1.0 / 3.0, 0.03 * w * w, -0.03 * w * w;
    return j;
  };
  return p;
}

/// f1 = (1/n) sum i (x_i - i)^2, f2 = exp(mean(x)) + |x|^2,
/// f3 = (1/(n(n+1))) sum i (n - i + 1) exp(-x_i).
Problem make_fds(int n) {
  Problem p = boxed("FDS", n, 3, -2.0, 2.0);
  p.value_oracle = [n](const Vector& x) {
    double f1 = 0.0, f3 = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double xi = x(i - 1);
      f1 += i * (xi - i) * (xi - i);
      f3 += i * (n - i + 1) * std::exp(-xi);
    }
    Vector f(3);
    f << f1 / n, std::exp(x.mean()) + x.squaredNorm(),
        f3 / (static_cast<double>(n) * (n + 1));
    return f;
  };
  p.jacobian_oracle = [n](const Vector& x) {
    Matrix j(3, n);
    const double emean = std::exp(x.mean());
    for (int i = 1; i <= n; ++i) {
      const double xi = x(i - 1);
      j(0, i - 1) = (2.0 * i / n) * (xi - i);
      j(1, i - 1) = emean / n + 2.0 * xi;
      j(2, i - 1) =
          -i * (n - i + 1) * std::exp(-xi) / (static_cast<double>(n) * (n + 1));
    }
    return j;
  };
  return p;
}

/// ((2x1-1)^2, 2(2x1-x2)^2, 3(x2-x3)^2).
Problem make_tridia1() {
  Problem p = boxed("TRIDIA1", 3, 3, -1.0, 1.0);
  p.value_oracle = [](const Vector& x) {
    const double a = 2.0 * x(0) - 1.0;
    const double b = 2.0 * x(0) - x(1);
    const double c = x(1) - x(2);
    Vector f(3);
    f << a * a, 2.0 * b * b, 3.0 * c * c;
    return f;
  };
  p.jacobian_oracle = [](const Vector& x) {
    const double a = 2.0 * x(0) - 1.0;
    const double b = 2.0 * x(0) - x(1);
    const double c = x(1) - x(2);
    Matrix j(3, 3);
    j << 4.0 * a, 0.0, 0.0,
        8.0 * b, -4.0 * b, 0.0,
        0.0, 6.0 * c, -6.0 * c;
    return j;
  };
  return p;
}

/// f1 = (2x1-1)^2 + x2^2; f_i = i(2x_{i-1}-x_i)^2 - (i-1)x_{i-1}^2 + i x_i^2
/// for i = 2,3; f4 = 4(2x3-x4)^2 - 3x3^2.
Problem make_tridia2() {
  Problem p = boxed("TRIDIA2", 4, 4, -1.0, 1.0);
  p.value_oracle = [](const Vector& x) {
    Vector f(4);
    const double a = 2.0 * x(0) - 1.0;
    f(0) = a * a + x(1) * x(1);
    for (int i = 2; i <= 3; ++i) {
      const double b = 2.0 * x(i - 2) - x(i - 1);
      f(i - 1) = i * b * b - (i - 1) * x(i - 2) * x(i - 2) +
                 i * x(i - 1) * x(i - 1);
    }
    const double c = 2.0 * x(2) - x(3);
    f(3) = 4.0 * c * c - 3.0 * x(2) * x(2);
    return f;
  };
  p.jacobian_oracle = [](const Vector& x) {
    Matrix j = Matrix::Zero(4, 4);
    j(0, 0) = 4.0 * (2.0 * x(0) - 1.0);
    j(0, 1) = 2.0 * x(1);
    for (int i = 2; i <= 3; ++i) {
      const double b = 2.0 * x(i - 2) - x(i - 1);
      j(i - 1, i - 2) = 4.0 * i * b - 2.0 * (i - 1) * x(i - 2);
      j(i - 1, i - 1) = -2.0 * i * b + 2.0 * i * x(i - 1);
    }
    const double c = 2.0 * x(2) - x(3);
    j(3, 2) = 16.0 * c - 6.0 * x(2);
    j(3, 3) = -8.0 * c;
    return j;
  };
  return p;
}

int default_dimension(const std::string& name) {
  if (name == "JOS1a") return 50;
  if (name == "JOS1b" || name == "JOS1c" || name == "JOS1d") return 100;
  if (name == "FDS") return 10;
  return 0;  // not dimension-generic
}

}  // namespace

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {
      "Imbalance1", "Imbalance2", "JOS1a", "JOS1b", "JOS1c", "JOS1d",
      "WIT1",       "WIT2",       "WIT3",  "WIT4",  "WIT5",  "WIT6",
      "Deb",        "PNR",        "DD1",   "FDS",   "TRIDIA1", "TRIDIA2"};
  return names;
}

Problem make_problem(const std::string& name, int n_override) {
  const int generic_n = default_dimension(name);
  if (n_override > 0 && generic_n == 0) {
    throw std::invalid_argument("make_problem: '" + name +
                                "' has a fixed dimension");
  }
  const int n = n_override > 0 ? n_override : generic_n;

  if (name == "Imbalance1") return make_imbalance(name, 0.1, 10.0, 1.0, 100.0);
  if (name == "Imbalance2") return make_imbalance(name, 1.0, 1.0, 100.0, 100.0);
  if (name == "JOS1a" || name == "JOS1b") return make_jos1(name, n, 2.0);
  if (name == "JOS1c") return make_jos1(name, n, 50.0);
  if (name == "JOS1d") return make_jos1(name, n, 100.0);
  if (name == "WIT1") return make_wit(name, 0.0);
  if (name == "WIT2") return make_wit(name, 0.5);
  if (name == "WIT3") return make_wit(name, 0.9);
  if (name == "WIT4") return make_wit(name, 0.99);
  if (name == "WIT5") return make_wit(name, 0.999);
  if (name == "WIT6") return make_wit(name, 1.0);
  if (name == "Deb") return make_deb();
  if (name == "PNR") return make_pnr();
  if (name == "DD1") return make_dd1();
  if (name == "FDS") return make_fds(n);
  if (name == "TRIDIA1") return make_tridia1();
  if (name == "TRIDIA2") return make_tridia2();

  throw std::invalid_argument("make_problem: unknown problem '" + name + "'");
}

Problem make_imbalance_demo() {
  Problem p = boxed("ImbalanceDemo", 2, 2, -2.0, 2.0);
  p.value_oracle = [](const Vector& x) {
    Vector f(2);
    f << 100.0 * (x(0) - 50.0) * (x(0) - 50.0) +
             100.0 * (x(1) + 50.0) * (x(1) + 50.0),
        0.5 * x.squaredNorm();
    return f;
  };
  p.jacobian_oracle = [](const Vector& x) {
    Matrix j(2, 2);
    j << 200.0 * (x(0) - 50.0), 200.0 * (x(1) + 50.0),
        x(0), x(1);
    return j;
  };
  return p;
}

Vector sample_initial_point(const Problem& problem, std::mt19937_64& rng) {
  // Top 53 bits of the engine output give a platform-stable uniform draw;
  // std::uniform_real_distribution is implementation-defined and would break
  // cross-platform reproducibility.
  const auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  Vector x(problem.n);
  for (int i = 0; i < problem.n; ++i) {
    const double lo = problem.lower(i);
    const double hi = problem.upper(i);
    double v;
    do {
      v = lo + unit() * (hi - lo);
    } while (!(v > lo && v < hi));
    x(i) = v;
  }
  return x;
}

bool ParetoReference::contains(const Vector& x, double tol) const {
  if (kind != Kind::segment) return false;
  if (x.size() != a.size()) return false;
  const Vector ab = b - a;
  const double len2 = ab.squaredNorm();
  double s = len2 > 0.0 ? (x - a).dot(ab) / len2 : 0.0;
  s = std::min(1.0, std::max(0.0, s));
  return (x - (a + s * ab)).norm() <= tol;
}

std::vector<Vector> ParetoReference::sample(int count) const {
  if (kind != Kind::segment || count < 1) return {};
  std::vector<Vector> points;
  points.reserve(count);
  if (count == 1) {
    points.push_back(0.5 * (a + b));
    return points;
  }
  for (int i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / (count - 1);
    points.push_back(a + s * (b - a));
  }
  return points;
}

ParetoReference pareto_reference(const std::string& name) {
  ParetoReference ref;
  if (name.rfind("JOS1", 0) == 0) {
    const int n = default_dimension(name);
    if (n > 0) {
      ref.kind = ParetoReference::Kind::segment;
      ref.a = Vector::Zero(n);
      ref.b = Vector::Constant(n, 2.0);
    }
    return ref;
  }
  if (name == "ImbalanceDemo") {
    ref.kind = ParetoReference::Kind::segment;
    ref.a = Vector::Zero(2);
    ref.b = Vector(2);
    ref.b << 50.0, -50.0;
    return ref;
  }
  return ref;  // kind = none
}

}  // namespace modo
