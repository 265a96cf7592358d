#include "qgw/density_weights.hpp"

namespace qgw {

DensityWeights compute_weights(const ExcitationSpectrum& sp) {
  const int N = sp.state.params.fock_cutoff + 1;
  DensityWeights w;
  w.fock_states = N;
  w.volume = sp.grid.volume();
  w.n0 = sp.state.density;
  w.branches = sp.branches();

  const Eigen::VectorXd& c0 = sp.state.amplitudes;
  Eigen::VectorXd d(N);   // (n - n0)
  Eigen::VectorXd q(N);   // (n - n0) c0_n
  for (int n = 0; n < N; ++n) {
    d[n] = n - w.n0;
    q[n] = d[n] * c0[n];
  }

  std::size_t count = 0;
  for (const auto& pm : sp.modes)
    for (const auto& md : pm)
      if (!md.zero_mode) ++count;

  w.omega.reserve(count);
  w.u.resize(count, N);
  w.v.resize(count, N);
  w.du.resize(count, N);
  w.dv.resize(count, N);

  std::size_t i = 0;
  for (std::size_t wp = 0; wp < sp.modes.size(); ++wp) {
    const double m = sp.grid.wedge[wp].multiplicity;
    for (const Mode& md : sp.modes[wp]) {
      if (md.zero_mode) continue;  // condensate phase mode: no density weight
      w.omega.push_back(md.omega);
      w.mult.push_back(m);
      w.branch.push_back(md.branch);
      w.N.push_back(q.dot(md.u + md.v));
      w.u.row(i) = md.u;
      w.v.row(i) = md.v;
      w.du.row(i) = md.u.cwiseProduct(d);
      w.dv.row(i) = md.v.cwiseProduct(d);
      ++i;
    }
  }
  return w;
}

double DensityWeights::one_particle_moment() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_modes(); ++i) s += mult[i] * N[i] * N[i];
  return s / double(volume);
}

}  // namespace qgw
