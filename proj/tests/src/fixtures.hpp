#pragma once

#include <cmath>

#include "quasigeo/tetra.hpp"

// Shapes with independently computed reference data; every numeric constant
// in the tests below was derived outside the library under test.
namespace fixtures {

using quasigeo::Tetrahedron;
using quasigeo::Vec3;

// Equilateral unit base b, c, d with the apex a on the vertical axis.
inline Tetrahedron apex_family(double height) {
    const double s = std::sqrt(3.0);
    return Tetrahedron::from_vertices({Vec3{0.5, s / 6.0, height},
                                       Vec3{0.0, 0.0, 0.0},
                                       Vec3{1.0, 0.0, 0.0},
                                       Vec3{0.5, s / 2.0, 0.0}});
}

inline constexpr double kN150Height = 0.6531220015870199;   // apex curvature 150 deg
inline constexpr double kN142Height = 0.61550519813675453;  // apex curvature 142 deg

inline Tetrahedron n150() { return apex_family(kN150Height); }
inline Tetrahedron n142() { return apex_family(kN142Height); }
inline Tetrahedron regular() { return apex_family(std::sqrt(2.0 / 3.0)); }

// Exactly one curvature above pi (282.25 deg at a); nearest vertex to a is d.
inline Tetrahedron case1() {
    return Tetrahedron::from_vertices({Vec3{1.0243422496, 3.056759813042, 1.498956427899},
                                       Vec3{0.0, 0.0, 0.0},
                                       Vec3{1.0, 0.0, 0.0},
                                       Vec3{-0.418414893008, 1.525264519341, 0.0}});
}

// Two curvatures above pi with the second-sharpest vertex nearest the first.
inline Tetrahedron case21() {
    return Tetrahedron::from_vertices({Vec3{0.424949143487, 0.322058649964, 0.891559953899},
                                       Vec3{0.0, 0.0, 0.0},
                                       Vec3{1.0, 0.0, 0.0},
                                       Vec3{0.804172860008, 0.796610964283, 0.0}});
}

// Two curvatures above pi, distinct nearest vertices (c to a, d to b).
inline Tetrahedron case222() {
    return Tetrahedron::from_vertices({Vec3{0.542201532527, -0.102377416724, 0.922628710583},
                                       Vec3{0.0, 0.0, 0.0},
                                       Vec3{1.0, 0.0, 0.0},
                                       Vec3{0.842308466917, 0.460561012858, 0.0}});
}

// Two curvatures above pi sharing the nearest vertex c.
inline Tetrahedron case223() {
    return Tetrahedron::from_vertices({Vec3{2.405336745575, 0.11995385813, 2.768009769617},
                                       Vec3{0.0, 0.0, 0.0},
                                       Vec3{1.0, 0.0, 0.0},
                                       Vec3{1.358510475976, 1.527704249806, 0.0}});
}

// Pointed at a; exactly one of the twelve loop candidates verifies.
inline Tetrahedron pointed_only() {
    return Tetrahedron::from_vertices({Vec3{-0.65, 0.0, 1.56},
                                       Vec3{0.0, 0.0, 0.0},
                                       Vec3{1.0, 0.0, 0.0},
                                       Vec3{0.89, 0.25, 0.0}});
}

// Exactly one face (C) passes the three-vertex angle conditions.
inline Tetrahedron one_q3() {
    return Tetrahedron::from_vertices({Vec3{-3.54, 1.98, 4.58},
                                       Vec3{0.0, 0.0, 0.0},
                                       Vec3{1.0, 0.0, 0.0},
                                       Vec3{4.91, 3.24, 0.0}});
}

// Exactly one visible image-vertex pair in the star unfolding at a.
inline Tetrahedron visible1() {
    return Tetrahedron::from_vertices(
        {Vec3{0.450326838492, 0.063391345521, 0.61237749736},
         Vec3{-0.393375740619, -0.919557157444, -0.514138959798},
         Vec3{-0.94983598816, -0.905002911193, 0.317021326235},
         Vec3{-0.898480885531, -0.725255481259, -0.263462865747}});
}

// A face angle of 153.5 deg kills two of the three four-vertex partitions.
inline Tetrahedron obtuse() {
    return Tetrahedron::from_vertices(
        {Vec3{-0.552103617667, -0.209483346937, 0.180445565512},
         Vec3{0.119608782334, -0.142439331863, 0.433587772191},
         Vec3{-0.693253234746, 0.1364543505, -0.590730170963},
         Vec3{0.956881577989, 0.110309648235, 0.378303918275}});
}

// Opposite edges pairwise equal for every (p, q, r): every vertex flat.
inline Tetrahedron iso_box(double p, double q, double r) {
    return Tetrahedron::from_vertices({Vec3{p, q, r}, Vec3{p, -q, -r},
                                       Vec3{-p, q, -r}, Vec3{-p, -q, r}});
}

inline Tetrahedron iso_box_default() { return iso_box(0.53, 0.61, 0.47); }

inline Tetrahedron flat_square() {
    return Tetrahedron::from_vertices({Vec3{0.0, 0.0, 0.0}, Vec3{1.0, 0.0, 0.0},
                                       Vec3{1.0, 1.0, 0.0}, Vec3{0.0, 1.0, 0.0}},
                                      true);
}

}  // namespace fixtures
