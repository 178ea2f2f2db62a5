#include "graphsum/partition.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include <json.hpp>

#include "graphsum/errors.hpp"

namespace graphsum {

namespace {

struct Token {
  int value;
  std::size_t pos;
};

// Shared validation for both syntaxes; positions point into the source text.
std::vector<std::vector<int>> check_blocks(const std::vector<std::vector<Token>>& blocks,
                                           const std::vector<std::size_t>& block_pos, std::size_t text_size) {
  if (blocks.empty()) throw ParseError("partition has no blocks", 0);
  int k = 0;
  std::map<int, std::size_t> seen;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw ParseError("empty block", block_pos[b]);
    for (const auto& t : blocks[b]) {
      if (t.value < 1) throw ParseError("element " + std::to_string(t.value) + " is not positive", t.pos);
      if (!seen.emplace(t.value, t.pos).second)
        throw ParseError("duplicate element " + std::to_string(t.value), t.pos);
      k = std::max(k, t.value);
    }
  }
  for (int e = 1; e <= k; ++e)
    if (!seen.contains(e)) throw ParseError("missing element " + std::to_string(e), text_size);
  std::vector<std::vector<int>> out;
  for (const auto& blk : blocks) {
    std::vector<int> v;
    for (const auto& t : blk) v.push_back(t.value);
    out.push_back(std::move(v));
  }
  return out;
}

Partition parse_braces(std::string_view s) {
  std::vector<std::vector<Token>> blocks;
  std::vector<std::size_t> block_pos;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto expect_int = [&]() -> Token {
    skip_ws();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) {
      if (i < s.size() && s[i] == '}') throw ParseError("empty block", start);
      throw ParseError("expected integer", start);
    }
    long long v = 0;
    for (std::size_t j = digits; j < i; ++j) {
      v = v * 10 + (s[j] - '0');
      if (v > 1'000'000) throw ParseError("element too large", start);
    }
    if (s[start] == '-') v = -v;
    return {static_cast<int>(v), start};
  };

  skip_ws();
  while (i < s.size()) {
    if (s[i] != '{') throw ParseError("expected '{'", i);
    block_pos.push_back(i);
    ++i;
    std::vector<Token> block;
    skip_ws();
    if (i < s.size() && s[i] == '}') throw ParseError("empty block", block_pos.back());
    block.push_back(expect_int());
    for (;;) {
      skip_ws();
      if (i >= s.size()) throw ParseError("unterminated block", i);
      if (s[i] == '}') {
        ++i;
        break;
      }
      if (s[i] != ',') throw ParseError("expected ',' or '}'", i);
      ++i;
      block.push_back(expect_int());
    }
    blocks.push_back(std::move(block));
    skip_ws();
  }
  return Partition(check_blocks(blocks, block_pos, s.size()));
}

Partition parse_json(std::string_view s) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(s);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
  if (!doc.is_array()) throw ParseError("expected an array of arrays", 0);
  std::vector<std::vector<Token>> blocks;
  std::vector<std::size_t> block_pos;
  // JSON values carry no source offsets; block ordinal stands in for position.
  for (std::size_t b = 0; b < doc.size(); ++b) {
    const auto& blk = doc[b];
    if (!blk.is_array()) throw ParseError("block " + std::to_string(b + 1) + " is not an array", b);
    std::vector<Token> block;
    for (const auto& el : blk) {
      if (!el.is_number_integer()) throw ParseError("non-integer element in block " + std::to_string(b + 1), b);
      block.push_back({el.get<int>(), b});
    }
    blocks.push_back(std::move(block));
    block_pos.push_back(b);
  }
  return Partition(check_blocks(blocks, block_pos, s.size()));
}

}  // namespace

Partition::Partition(std::vector<std::vector<int>> blocks) {
  int k = 0;
  std::size_t total = 0;
  for (auto& b : blocks) {
    if (b.empty()) throw InputError("partition: empty block");
    std::sort(b.begin(), b.end());
    k = std::max(k, b.back());
    total += b.size();
  }
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  std::vector<std::size_t> owner(static_cast<std::size_t>(k) + 1, blocks.size());
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    for (int e : blocks[bi]) {
      if (e < 1) throw InputError("partition: element " + std::to_string(e) + " is not positive");
      if (owner[e] != blocks.size()) throw InputError("partition: duplicate element " + std::to_string(e));
      owner[e] = bi;
    }
  }
  if (total != static_cast<std::size_t>(k)) {
    for (int e = 1; e <= k; ++e)
      if (owner[e] == blocks.size()) throw InputError("partition: missing element " + std::to_string(e));
  }
  k_ = k;
  blocks_ = std::move(blocks);
  block_of_.assign(owner.begin() + (k > 0 ? 1 : 0), owner.end());
  if (k == 0) block_of_.clear();
}

Partition Partition::singletons(int k) {
  std::vector<std::vector<int>> blocks;
  for (int e = 1; e <= k; ++e) blocks.push_back({e});
  return Partition(std::move(blocks));
}

std::size_t Partition::block_of(int element) const {
  if (element < 1 || element > k_) throw InputError("partition: element " + std::to_string(element) + " out of range");
  return block_of_[static_cast<std::size_t>(element - 1)];
}

std::string Partition::to_string() const {
  std::string out;
  for (const auto& b : blocks_) {
    out += '{';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(b[i]);
    }
    out += '}';
  }
  return out;
}

Partition parse_partition(std::string_view text) {
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  if (first == text.size()) throw ParseError("empty partition text", first);
  if (text[first] == '[') return parse_json(text);
  return parse_braces(text);
}

Partition kernel_of(std::span<const int> indices) {
  if (indices.empty()) throw InputError("kernel_of: empty index sequence");
  std::map<int, std::size_t> block_for_value;
  std::vector<std::vector<int>> blocks;
  for (std::size_t p = 0; p < indices.size(); ++p) {
    auto [it, fresh] = block_for_value.emplace(indices[p], blocks.size());
    if (fresh) blocks.emplace_back();
    blocks[it->second].push_back(static_cast<int>(p + 1));
  }
  return Partition(std::move(blocks));
}

bool dominates(const Partition& pi, const Partition& sigma) {
  if (pi.k() != sigma.k())
    throw InputError("dominates: ground sets differ (" + std::to_string(pi.k()) + " vs " +
                     std::to_string(sigma.k()) + ")");
  for (const auto& b : sigma.blocks()) {
    std::size_t owner = pi.block_of(b.front());
    for (int e : b)
      if (pi.block_of(e) != owner) return false;
  }
  return true;
}

DirectedMultigraph graph_of_partition(const Partition& pi) {
  if (pi.k() % 2 != 0) throw InputError("graph_of_partition: k = " + std::to_string(pi.k()) + " is odd");
  std::vector<std::string> vertices;
  for (std::size_t b = 0; b < pi.block_count(); ++b) vertices.push_back("i" + std::to_string(b + 1));
  std::vector<Edge> edges;
  const int m = pi.k() / 2;
  for (int l = 1; l <= m; ++l)
    edges.push_back({"e" + std::to_string(l), pi.block_of(2 * l), pi.block_of(2 * l - 1)});
  return DirectedMultigraph(std::move(vertices), std::move(edges));
}

}  // namespace graphsum
