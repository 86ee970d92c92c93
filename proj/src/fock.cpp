#include "homsim/fock.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace homsim::quantum {

namespace {

using cd = std::complex<double>;

double factorial(int n) { return std::tgamma(n + 1.0); }

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

cd int_pow(cd z, int k) {
  cd r{1.0, 0.0};
  for (int e = 0; e < k; ++e) r *= z;
  return r;
}

cd i_pow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

TwoModeState::TwoModeState(int max_photons) : max_(max_photons) {
  if (max_photons < 0) throw std::invalid_argument("truncation must be non-negative");
  coeffs_.assign(static_cast<std::size_t>((max_ + 1) * (max_ + 2) / 2), cd{});
}

std::size_t TwoModeState::index(int n, int m) const {
  if (n < 0 || m < 0 || n + m > max_) throw std::out_of_range("Fock index outside truncation");
  // Sectors of fixed total N = n + m are stored consecutively.
  const int total = n + m;
  return static_cast<std::size_t>(total * (total + 1) / 2 + m);
}

cd& TwoModeState::at(int n, int m) { return coeffs_[index(n, m)]; }
const cd& TwoModeState::at(int n, int m) const { return coeffs_[index(n, m)]; }

double TwoModeState::total_probability() const {
  double total = 0.0;
  for (const auto& c : coeffs_) total += std::norm(c);
  return total;
}

TwoModeState TwoModeState::coherent(cd alpha, cd beta, int max_photons) {
  TwoModeState s(max_photons);
  const double vacuum = std::exp(-0.5 * (std::norm(alpha) + std::norm(beta)));
  for (int n = 0; n <= max_photons; ++n) {
    for (int m = 0; n + m <= max_photons; ++m) {
      s.at(n, m) = vacuum * int_pow(alpha, n) * int_pow(beta, m) /
                   std::sqrt(factorial(n) * factorial(m));
    }
  }
  return s;
}

TwoModeState TwoModeState::basis(int n, int m, int max_photons) {
  TwoModeState s(max_photons);
  s.at(n, m) = 1.0;
  return s;
}

std::complex<double> beamsplitter_transition(int n, int m, int p, int q) {
  if (n + m != p + q) return {};
  // (a^dag)^n (b^dag)^m |0> / sqrt(n! m!) with
  // a^dag = (c^dag + i d^dag)/sqrt2 and b^dag = (i c^dag + d^dag)/sqrt2.
  cd amp{};
  for (int k = 0; k <= n; ++k) {      // c^dag taken from a^dag
    const int l = p - k;              // c^dag taken from b^dag
    if (l < 0 || l > m) continue;
    amp += binomial(n, k) * binomial(m, l) * i_pow((n - k) + l);
  }
  return amp * std::pow(2.0, -0.5 * (n + m)) *
         std::sqrt(factorial(p) * factorial(q) / (factorial(n) * factorial(m)));
}

TwoModeState apply_beamsplitter(const TwoModeState& input) {
  const int max = input.max_photons();
  TwoModeState out(max);
  for (int n = 0; n <= max; ++n) {
    for (int m = 0; n + m <= max; ++m) {
      const cd c_in = input.at(n, m);
      if (c_in == cd{}) continue;
      for (int p = 0; p <= n + m; ++p) {
        out.at(p, n + m - p) += c_in * beamsplitter_transition(n, m, p, n + m - p);
      }
    }
  }
  return out;
}

double occupied_probability_c(const TwoModeState& s) {
  double total = 0.0;
  for (int p = 1; p <= s.max_photons(); ++p) {
    for (int q = 0; p + q <= s.max_photons(); ++q) total += s.probability(p, q);
  }
  return total;
}

double occupied_probability_d(const TwoModeState& s) {
  double total = 0.0;
  for (int p = 0; p <= s.max_photons(); ++p) {
    for (int q = 1; p + q <= s.max_photons(); ++q) total += s.probability(p, q);
  }
  return total;
}

std::array<std::complex<double>, 4> fock_path_amplitudes(double mu, const SlotPhases& phases,
                                                         int max_photons) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (max_photons < 1) throw std::invalid_argument("truncation must admit one photon");
  const double amp = std::sqrt(mu);
  const auto slot_i = TwoModeState::coherent(amp, std::polar(amp, phases.dphi_i), max_photons);
  const auto slot_j = TwoModeState::coherent(amp, std::polar(amp, phases.dphi_j), max_photons);

  // Route amplitudes <1_C 0_D|U|1_A 0_B> etc.
  const cd a_to_c = beamsplitter_transition(1, 0, 1, 0);
  const cd b_to_c = beamsplitter_transition(0, 1, 1, 0);
  const cd a_to_d = beamsplitter_transition(1, 0, 0, 1);
  const cd b_to_d = beamsplitter_transition(0, 1, 0, 1);

  const cd ai = slot_i.at(1, 0) * a_to_c;  // slot i photon from A reaches D1
  const cd bi = slot_i.at(0, 1) * b_to_c;
  const cd aj = slot_j.at(1, 0) * a_to_d;  // slot j photon from A reaches D2
  const cd bj = slot_j.at(0, 1) * b_to_d;
  return {ai * bj, bi * aj, ai * aj, bi * bj};
}

double fock_coincidence_visibility(double mu, int max_photons, int phase_points) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (phase_points < 3) throw std::invalid_argument("need at least three phase points");
  const double amp = std::sqrt(mu);

  // Slots i and j hold independent coherent states, so a delayed coincidence
  // factorises into P_i(C occupied) * P_j(D occupied) at fixed phases.
  double coherent = 0.0;
  for (int k = 0; k < phase_points; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / phase_points;
    const auto out =
        apply_beamsplitter(TwoModeState::coherent(amp, std::polar(amp, theta), max_photons));
    coherent += occupied_probability_c(out) * occupied_probability_d(out);
  }
  coherent /= phase_points;

  // Far from the dip A and B occupy orthogonal temporal modes: each crosses
  // the beamsplitter alone and an output stays empty only if both leave it empty.
  const auto from_a = apply_beamsplitter(TwoModeState::coherent(amp, 0.0, max_photons));
  const auto from_b = apply_beamsplitter(TwoModeState::coherent(0.0, amp, max_photons));
  const double empty_c = (from_a.total_probability() - occupied_probability_c(from_a)) *
                         (from_b.total_probability() - occupied_probability_c(from_b));
  const double empty_d = (from_a.total_probability() - occupied_probability_d(from_a)) *
                         (from_b.total_probability() - occupied_probability_d(from_b));
  const double distinguishable = (1.0 - empty_c) * (1.0 - empty_d);
  return 1.0 - coherent / distinguishable;
}

}  // namespace homsim::quantum
