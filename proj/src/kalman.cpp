#include "boxtrack/kalman.hpp"

namespace boxtrack {

namespace {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;
using Mat48 = Eigen::Matrix<double, 4, 8>;

Mat8 transition_matrix() {
  Mat8 f = Mat8::Identity();
  for (int i = 0; i < 4; ++i) f(i, i + 4) = 1.0;
  return f;
}

Vec4 measurement_stds(double h, const KalmanParams& p) {
  const double pos = p.measurement_pos_weight * h;
  return Vec4{pos, pos, p.measurement_aspect_std, pos};
}

Mat8 process_noise(double h, const KalmanParams& p) {
  const double pos = p.process_pos_weight * h;
  const double vel = p.process_vel_weight * h;
  Vec8 stds;
  stds << pos, pos, p.process_aspect_std, pos, vel, vel, p.process_aspect_vel_std, vel;
  return stds.array().square().matrix().asDiagonal();
}

void symmetrize(Mat8& m) { m = 0.5 * (m + m.transpose()).eval(); }

}  // namespace

KalmanState kalman_initiate(const Box& det, const KalmanParams& params) {
  KalmanState s;
  s.mean << det.u, det.v, det.w / det.h, det.h, 0.0, 0.0, 0.0, 0.0;
  const Vec4 meas = measurement_stds(det.h, params);
  Vec8 stds;
  stds << meas(0), meas(1), meas(2), meas(3),
      std::sqrt(params.initial_velocity_var_scale) * meas(0),
      std::sqrt(params.initial_velocity_var_scale) * meas(1),
      std::sqrt(params.initial_velocity_var_scale) * meas(2),
      std::sqrt(params.initial_velocity_var_scale) * meas(3);
  s.cov = stds.array().square().matrix().asDiagonal();
  return s;
}

KalmanState kalman_predict(const KalmanState& state, const KalmanParams& params) {
  static const Mat8 f = transition_matrix();
  KalmanState out;
  out.mean = f * state.mean;
  out.cov = f * state.cov * f.transpose() + process_noise(state.mean(3), params);
  symmetrize(out.cov);
  return out;
}

KalmanState kalman_correct(const KalmanState& state, const Box& det,
                           const KalmanParams& params) {
  static const Mat48 h = [] {
    Mat48 m = Mat48::Zero();
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }();

  const Mat4 r = measurement_stds(state.mean(3), params)
                     .array()
                     .square()
                     .matrix()
                     .asDiagonal();
  Vec4 z{det.u, det.v, det.w / det.h, det.h};

  const Mat4 innovation_cov = h * state.cov * h.transpose() + r;
  const Eigen::Matrix<double, 8, 4> gain =
      state.cov * h.transpose() * innovation_cov.llt().solve(Mat4::Identity());

  KalmanState out;
  out.mean = state.mean + gain * (z - h * state.mean);
  // Joseph form keeps the covariance PSD over long runs.
  const Mat8 ikh = Mat8::Identity() - gain * h;
  out.cov = ikh * state.cov * ikh.transpose() + gain * r * gain.transpose();
  symmetrize(out.cov);
  return out;
}

bool kalman_degenerate(const KalmanState& state) {
  return !(state.mean(3) > 0.0) || !(state.mean(2) > 0.0);
}

Box kalman_state_to_box(const KalmanState& state) {
  if (kalman_degenerate(state)) {
    throw DegenerateStateError("kalman state no longer describes a box");
  }
  const double a = state.mean(2);
  const double h = state.mean(3);
  return Box{state.mean(0), state.mean(1), a * h, h};
}

}  // namespace boxtrack
