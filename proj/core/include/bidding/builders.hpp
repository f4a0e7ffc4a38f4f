#pragma once

#include <span>
#include <vector>

#include "bidding/game_graph.hpp"

namespace bidding {

// Tug o' War on a path of 2n+1 vertices labeled -n..n, start 0. Alice's goal
// is the vertex labeled -n, Bob's the vertex labeled n, so the Richman value
// at label j is (j+n)/2n.
GameGraph build_tug(int n);

// Ultimatum of degree n: vertices B, -n..n, A with the first mover issuing an
// n-move ultimatum to the other player.
GameGraph build_ult(int n);

enum class PrimitiveKind {
  kA,               // Alice has already won
  kB,               // Bob has already won
  kE,               // first player to move wins
  kAPow,            // Alice wins if she makes any of the first n moves
  kBPow,            // Bob wins if he makes any of the first n moves
  kBidZero,         // same game as kBPow; named after the zero-bid example
  kSecondMoveWins,  // whoever makes the second move wins
  kLadiesBlocks,    // Alice wins by taking every move of some block 1..n
  kAlicePath,       // Alice wins after exactly n moves by anyone
};

struct Primitive {
  PrimitiveKind kind;
  int n = 0;
};

GameGraph build_primitive(Primitive p);

// Binary wedge sum: a new start whose red and blue moves both lead to the
// starts of g and h.
GameGraph wedge(const GameGraph& g, const GameGraph& h);
// Finite n-ary wedge: the first mover picks any one of the given starts.
GameGraph wedge_all(std::span<const GameGraph> games);

// Colors and outcomes swapped; ties stay ties.
GameGraph reverse(const GameGraph& g);

// G[n]: G unrolled with a move counter; plays still running after n moves end
// in a tie.
GameGraph truncate(const GameGraph& g, int n);

// Same graph, different start vertex.
GameGraph with_start(const GameGraph& g, VertexId start);

}  // namespace bidding
