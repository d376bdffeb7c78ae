#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mbook/embedding.hpp"

namespace mbook {

struct Fixture {
  std::string name;
  std::string note;  // where the data comes from
  BookEmbedding embedding;
  std::map<Page, std::string> color_names;
  // Product shape H x C_s the embedding is read under.
  int h = 0;
  int s = 0;
  int t = 0;
};

// lemma1-c3c3, lemma2-c5c5, figure3-gadget, figure4-c3c5-derived
std::vector<std::string> fixture_names();
bool is_fixture_name(std::string_view name);
// Throws precondition for unknown names.
Fixture fixture(std::string_view name);

// 5-page embedding of C3 x C3 with layout (1,2,3,6,5,4,7,8,9).
// Pages 1..5 = red, black, green, blue, purple.
BookEmbedding lemma1_embedding();

// 5-page embedding of C5 x C5. Pages 1..5 = purple, blue, red, green, black.
BookEmbedding lemma2_embedding();

// C5 x C3 carrying a block that satisfies condition (a) but whose
// before-matching mixes both unused pages. Only block 1 and its two
// boundary matchings are prescribed; the remaining edges are filled
// greedily and the whole is not a valid embedding.
BookEmbedding figure3_gadget();

std::map<Page, std::string> lemma1_color_names();
std::map<Page, std::string> lemma2_color_names();

}  // namespace mbook
