#pragma once

#include <cstdint>

#include "exo/parallel.hpp"
#include "exo/pouch_model.hpp"

// Monte-Carlo oracle for the contact-patch area: builds the union shape
// (proximal disc, distal disc in the extended regime, connecting triangle
// or trapezoid placed tangent so the pieces are disjoint) from the contact
// dimensions and estimates its area by sampling. Fully independent of the
// closed-form decomposition it checks; sampling is counter-based so the
// estimate is identical for any thread count.
namespace exo::test {

double mc_contact_area_mm2(const exo::geo::PouchGeometry& g, double h_mm, std::uint64_t samples,
                           std::uint64_t seed, exo::Exec exec = exo::Exec::Parallel);

} // namespace exo::test
