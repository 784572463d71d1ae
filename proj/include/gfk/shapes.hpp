#pragma once

#include <string>

#include "gfk/grid.hpp"

// Generators for the test-domain zoo. Every shape is an open set rasterized
// by cell-center membership. The string form ("name:key=val,key=val") is
// what the CLI and sweep configs use; vector-valued keys separate
// components with '/'.
//
//   halfspace:angle=0.3,r=0.5        {x . w(angle) < r}
//   halfspace:omega=1/1/0,r=0.5      explicit direction (normalized)
//   wedge:theta=2.356                sector of opening theta about -e1, apex 0
//   bump:r0=0,a=0.8,s=0.75           {x1 < r0 + a exp(-|x'|^2/(2 s^2))}
//   notch:r0=0,d=1.5,w=0.4           halfspace minus a boundary notch
//   two-slabs:r0=-0.3,s0=0.7,w=0.4   halfspace plus a detached slab
//   ball:rho=1,c=0/0                 open ball
//   ball-complement:r0=0,rho=0.5,c=-1.2/0.8   halfspace minus a ball

namespace gfk {

DomainMask make_halfspace_mask(const GridPtr& grid, const Eigen::VectorXd& omega, double r);
DomainMask make_wedge_mask(const GridPtr& grid, double theta);
DomainMask make_bump_mask(const GridPtr& grid, double r0, double a, double s);
DomainMask make_notch_mask(const GridPtr& grid, double r0, double d, double w);
DomainMask make_two_slabs_mask(const GridPtr& grid, double r0, double s0, double w);
DomainMask make_ball_mask(const GridPtr& grid, double rho, const Eigen::VectorXd& c);
DomainMask make_ball_complement_mask(const GridPtr& grid, double r0, double rho,
                                     const Eigen::VectorXd& c);

/// Parse a shape spec string and rasterize it on the grid.
DomainMask make_shape(const std::string& spec, const GridPtr& grid);

}  // namespace gfk
