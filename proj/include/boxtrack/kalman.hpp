#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "boxtrack/geometry.hpp"

namespace boxtrack {

// Noise constants for the constant-velocity box filter. Position and size
// standard deviations scale with the current box height; the aspect-ratio
// component uses absolute values. All of these are configurable through
// TrackerConfig.
struct KalmanParams {
  double measurement_pos_weight = 0.05;   // std of u, v, h measurements, times h
  double measurement_aspect_std = 0.01;   // std of the aspect-ratio measurement
  double process_pos_weight = 0.05;       // per-step process std of u, v, h, times h
  double process_aspect_std = 0.01;       // per-step process std of aspect ratio
  double process_vel_weight = 0.00625;    // per-step process std of u̇, v̇, ḣ, times h
  double process_aspect_vel_std = 1e-5;   // per-step process std of ȧ
  double initial_velocity_var_scale = 10.0;
};

// State over [u, v, a, h, u̇, v̇, ȧ, ḣ] with a = w/h. Velocities are
// per-frame rates (the frame interval is fixed to 1).
struct KalmanState {
  Eigen::Matrix<double, 8, 1> mean = Eigen::Matrix<double, 8, 1>::Zero();
  Eigen::Matrix<double, 8, 8> cov = Eigen::Matrix<double, 8, 8>::Zero();
};

class DegenerateStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fresh state from a detection: zero velocities, diagonal covariance with a
// wide velocity prior so two observations can set the velocity.
KalmanState kalman_initiate(const Box& det, const KalmanParams& params);

// Constant-velocity time update; process noise is recomputed from the
// current height each step. Pure: returns the advanced state.
KalmanState kalman_predict(const KalmanState& state, const KalmanParams& params);

// Measurement update with [u, v, w/h, h] taken from the detection.
KalmanState kalman_correct(const KalmanState& state, const Box& det,
                           const KalmanParams& params);

// True when the state no longer describes a box (h <= 0 or a <= 0);
// such tracks are force-dropped by the tracker.
bool kalman_degenerate(const KalmanState& state);

// Box described by the state mean. Throws DegenerateStateError when
// kalman_degenerate(state) holds.
Box kalman_state_to_box(const KalmanState& state);

}  // namespace boxtrack
