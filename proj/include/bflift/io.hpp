#pragma once

#include "bflift/bf_map.hpp"
#include "bflift/graph.hpp"
#include "bflift/hom.hpp"
#include "bflift/level_vector.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace bflift {

// --- graph files ------------------------------------------------------
//
//   graph <name>
//   vertex <name>          (declaration order is the canonical order)
//   edge <name> <src> <rng>
//
// '#' starts a comment, blank lines are skipped.

GraphPtr parse_graph(std::istream& in, const std::string& origin);
GraphPtr load_graph(const std::filesystem::path& file);
std::string graph_to_text(const Graph& g);

// Resolves a graph token from a map/hom header: tried as a path relative to
// `base_dir`, then with a ".graph" suffix.
GraphPtr resolve_graph_token(const std::string& token, const std::filesystem::path& base_dir);

// --- level vector files -------------------------------------------------
//
//   bfvec <graph> level <n>
//   coord <vertex> <index> <integer>
//
// Omitted coordinates are zero; regular vertices must use index n, sinks
// any index with |index| <= n.

LevelVector parse_bfvec(std::istream& in, const std::string& origin,
                        const std::filesystem::path& base_dir);
std::string bfvec_to_text(const LevelVector& x, const std::string& graph_token);

// --- map files ----------------------------------------------------------
//
//   bfmap <E> -> <F> level <N>
//   image <v>
//   coord <vertex> <index> <integer>
//   ...

struct MapFile {
    BFMapSpec spec;
    std::string source_token;
    std::string target_token;
};
MapFile parse_map_file(std::istream& in, const std::string& origin,
                       const std::filesystem::path& base_dir);
MapFile load_map_file(const std::filesystem::path& file);
std::string map_to_text(const BFMapSpec& m, const std::string& source_token,
                        const std::string& target_token);

// --- matrix map files -----------------------------------------------------
//
//   matmap <E> -> <F> shift <k>
//   <row-major integer rows, one row per source vertex>

struct MatMapFile {
    Matrix p;
    int shift = 0;
    std::string source_token;
    std::string target_token;
};
MatMapFile parse_matmap_file(std::istream& in, const std::string& origin);
MatMapFile load_matmap_file(const std::filesystem::path& file);

// --- hom files --------------------------------------------------------
//
//   hom <E> -> <F>
//   vimage <v> := <element expression>
//   eimage <e> := <element expression>
//   gimage <e> := <element expression>   (optional; defaults to the star)
//   witness level <L>                     (optional block)
//   gamma <v> <w> := <path> ...
//   sigma <v> <u> <i> := <path> ...
//   xi <v> <w> : <e>,<path> -> <path>
//   zeta <i> <v> <u> : <e>,<path> -> <path>
//   violation <kind> := <text>            (optional, informational)

struct HomFile {
    GradedHom hom;
    std::string source_token;
    std::string target_token;
};
HomFile parse_hom_file(std::istream& in, const std::string& origin,
                       const std::filesystem::path& base_dir);
HomFile load_hom_file(const std::filesystem::path& file);
std::string hom_to_text(const GradedHom& h, const std::string& source_token,
                        const std::string& target_token);
std::string witness_to_text(const Graph& source, const Graph& target, const TidyWitness& w);

// Parses a path spelled either as a vertex name or as dotted edge names.
Path parse_path(const Graph& g, const std::string& text);

std::string matrix_form_to_text(const BFMatrixForm& form);

}  // namespace bflift
