#pragma once

namespace birkhoff {

// Numerical thresholds shared across modules. All are overridable from the
// CLI (--eps-int, --eps-frame, --eps-sep, --delta-pole) or a config file.
struct Tolerances {
  double norm = 1e-12;         // |p| = 1 on S^3 after renormalization
  double reader_norm = 1e-6;   // accepted |p| - 1 before renormalization
  double edge = 1e-9;          // minimum edge length
  double separation = 1e-6;    // minimum distance between link components
  double pole = 0.05;          // radians between a projection pole and any vertex
  double integer = 1e-6;       // Gauss sum residual gate
  double angle = 1e-6;         // framing vector vs tangent
  double parallel = 1e-9;      // projected edge parallelism in the crossing oracle
  double close = 1e-8;         // arc endpoint identification
  double frame = 1e-3;         // framing equation consistency
};

}  // namespace birkhoff
