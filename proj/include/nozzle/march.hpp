#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nozzle/background.hpp"
#include "nozzle/fd.hpp"
#include "nozzle/gas.hpp"
#include "nozzle/grid.hpp"

namespace nozzle {

// Potential and its radial derivative sampled on the angular grid at a
// fixed radius.  The angular derivative reported at both endpoints is
// exactly zero (axis regularity and the wall condition).
struct FlowSlice {
    double r = 1.0;
    AngularGrid grid;
    std::vector<double> Phi;
    std::vector<double> V;  // d_r Phi

    int n() const { return grid.size(); }
};

// Per-slice derived fields used by the stepper and the diagnostics.
struct SliceFields {
    std::vector<double> dPhi_dphi;   // zero at both endpoints
    std::vector<double> d2Phi_dphi2;
    std::vector<double> dV_dphi;     // zero at both endpoints
    std::vector<double> speed_sq;
    std::vector<double> c2;
    std::vector<double> rho;
    double min_hyperbolicity = 0.0;  // min over nodes of V^2 - c^2
    double min_cavitation = 0.0;     // min over nodes of C0 - speed_sq/2
};

// Wall closure for fields solving the cone equation: u''' = -cot(phi0) u''.
inline double wall_third_ratio(const GasParams& params) {
    return -1.0 / std::tan(params.phi0);
}

// Derivative operator matched to a slice grid and the cone wall closure.
inline AngularDerivative slice_ops(const FlowSlice& slice, const GasParams& params) {
    return AngularDerivative(slice.grid.size(), slice.grid.spacing,
                             wall_third_ratio(params));
}

SliceFields slice_fields(const FlowSlice& slice, const GasParams& params,
                         const AngularDerivative& ops);

// d_r^2 Phi at every node, obtained by solving the potential equation for
// the second radial derivative.  At the axis the cot(phi)*d_phi term is
// replaced by its regular limit d_phi^2.
std::vector<double> rhs_second_radial(const FlowSlice& slice, const GasParams& params);

struct GuardFloors {
    double hyperbolicity = 1e-8;
    double cavitation = 1e-10;
};

struct StepRecord {
    double r_before = 0.0;
    double dr = 0.0;
    double min_hyperbolicity = 0.0;
    double min_cavitation = 0.0;
};

struct AbortInfo {
    double r = 0.0;
    std::string reason;
};

struct MarchTrace {
    std::vector<FlowSlice> slices;
    std::vector<StepRecord> guard_log;
    long steps_taken = 0;
    GasParams params;
    std::optional<AbortInfo> aborted;

    bool completed() const { return !aborted.has_value(); }
    std::vector<double> stored_radii() const {
        std::vector<double> r;
        r.reserve(slices.size());
        for (const auto& s : slices) r.push_back(s.r);
        return r;
    }
};

struct MarchOptions {
    int n_phi = 129;
    double cfl = 0.5;            // fraction of the angular characteristic bound
    int store_targets = 65;      // log-spaced radii forced onto the step sequence
    int store_every = 0;         // additionally store every k-th step (0 = off)
    GuardFloors floors;
    double min_step_fraction = 1e-10;  // abort when dr < fraction * r
    std::vector<double> extra_targets; // radii that must be hit exactly
};

// One explicit RK4 step of size dr on (Phi, V).  Throws StepRejected when the
// updated slice violates a guard; propagates rhs errors.
FlowSlice step(const FlowSlice& slice, double dr, const GasParams& params,
               const GuardFloors& floors = {});

// March from r = 1 to r_max with the adaptive step bound
// dr = cfl * h_phi * r * sqrt(V^2 - c^2)/c.  Guard trips are retried with a
// smaller step and finally reported in `aborted`, never clamped.
MarchTrace march(const BumpProfile& Phi0, const BumpProfile& Phi1, double eps,
                 double r_max, const GasParams& params, const MarchOptions& opts = {});

// Initial slice from the entrance data.
FlowSlice initial_slice(const BumpProfile& Phi0, const BumpProfile& Phi1, double eps,
                        const GasParams& params, int n_phi);

// Difference fields against the radial background at the slice radius.
struct PerturbationSlice {
    double r = 1.0;
    std::vector<double> dot_Phi;
    std::vector<double> d_dot_Phi_dr;
    std::vector<double> d_dot_Phi_dphi;
};

std::vector<PerturbationSlice> perturbation(const MarchTrace& trace);

}  // namespace nozzle
