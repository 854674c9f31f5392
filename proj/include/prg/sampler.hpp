#pragma once

#include <cstdint>
#include <string>

#include "prg/game.hpp"

namespace prg {

enum class SamplerKind { uniform_iid, truncated_normal };

SamplerKind sampler_kind_from_string(const std::string& name);
std::string to_string(SamplerKind kind);

// Describes how random instances are drawn.  uniform_iid puts every initial
// document and information need i.i.d. uniform in the cube.  truncated_normal
// (n = s = 3 only) draws, per coordinate, the triple of document entries from
// a normal with mean 0.5, sd sigma and AR(1) correlation rho_docs truncated
// to the cube, and likewise the triple of atom entries with rho_atoms.
struct EcosystemSpec {
    SamplerKind kind = SamplerKind::uniform_iid;
    std::size_t n = 3, k = 3, s = 3;
    double lambda = 0.5; // homogeneous

    double mean = 0.5;
    double sigma = 0.2;
    double rho_docs = 0.0;
    double rho_atoms = 0.0;
    std::uint64_t max_attempts = 10000; // rejection budget per triple
};

void validate_ecosystem_spec(const EcosystemSpec& spec);

// Deterministic in (spec, seed); the activation is attached afterwards so
// paired designs can reuse one draw across activation families.
PublishersGame sample_instance(const EcosystemSpec& spec, const Activation& activation,
                               std::uint64_t seed);

} // namespace prg
