#ifndef PDCP_MESH_HPP
#define PDCP_MESH_HPP

#include <optional>
#include <ostream>
#include <vector>

namespace pdcp {

// Parameters of the sinh-stretched spatial mesh. The mesh is uniform on
// [s_left, s_right] and stretched outside; d sets the stretch scale.
struct MeshParams {
    double d = 0.0;       // stretch scale, currency units
    double s_left = 0.0;  // lower bound of the uniform zone
    double s_right = 0.0; // upper bound of the uniform zone
    double s_max = 0.0;   // requested truncation bound
    double strike = 0.0;  // K; midway placement requires K = (s_left+s_right)/2

    void validate() const;
    // d = K/3, [0.8K, 1.2K], 5K
    static MeshParams standard_for_strike(double strike);
};

struct XiBounds {
    double xi_min; // asinh(-s_left/d) <= 0
    double xi_int; // (s_right - s_left)/d
    double xi_max; // xi_int + asinh((s_max - s_right)/d)
};

// One-dimensional nonuniform mesh 0 = s_0 < s_1 < ... < s_m.
struct Mesh1D {
    std::vector<double> points; // s_0..s_m
    std::vector<double> widths; // widths[l] = s_l - s_{l-1}, widths[0] = 0
    double xi_step = 0.0;       // spacing of the underlying xi lattice
    double xi_min = 0.0;
    std::optional<int> midway_index; // i* with (s_{i*} + s_{i*+1})/2 = strike

    int m() const { return static_cast<int>(points.size()) - 1; }
    int size() const { return static_cast<int>(points.size()); }
};

// Tensor grid of two 1D meshes; s1 runs along axis1 (fast index).
struct Grid2D {
    Mesh1D axis1;
    Mesh1D axis2;

    int m1() const { return axis1.m(); }
    int m2() const { return axis2.m(); }
    int size() const { return axis1.size() * axis2.size(); }
    int index(int i, int j) const { return i + axis1.size() * j; }
};

// Measured mesh-smoothness constants: c0*dxi <= h_l <= c1*dxi and
// |h_{l+1} - h_l| <= c2*dxi^2 over the whole mesh.
struct SmoothnessReport {
    double c0;
    double c1;
    double c2;
};

XiBounds xi_bounds(const MeshParams& params);

// Piecewise transformation: sinh-stretched below 0 and above xi_int,
// linear in between. Strictly increasing on the whole line.
double map_phi(double xi, const MeshParams& params);

// Strike-midway mesh: nu odd, dxi = (xi_int - 2 xi_min)/nu, point count m
// is the smallest integer with m*dxi >= xi_max - xi_min (xi_max is then
// reset to xi_min + m*dxi, so the last point lands at or beyond s_max).
Mesh1D build_mesh(const MeshParams& params, int nu);

// Generic variant without the midway construction: m intervals spanning
// [xi_min, xi_max] exactly. Unit-test helper.
Mesh1D build_mesh_uniform_xi(const MeshParams& params, int m);

SmoothnessReport smoothness_report(const Mesh1D& mesh);

// Smallest odd nu whose built mesh size is nearest to target_m.
int nu_for_target_m(const MeshParams& params, int target_m);

// Columns: index,xi,s,width
void write_mesh_csv(const Mesh1D& mesh, std::ostream& os);

} // namespace pdcp

#endif
