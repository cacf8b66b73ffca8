#include "mssc/io.hpp"

#include <algorithm>
#include <sstream>

#include "mssc/rng.hpp"

namespace mssc {

namespace {

// Next content line, with comments and blank lines skipped.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    return true;
  }
  return false;
}

long long parse_int(std::istringstream& in, const std::string& what) {
  long long v;
  if (!(in >> v)) throw ParseError("expected integer for " + what);
  return v;
}

void expect_word(std::istringstream& in, const std::string& word) {
  std::string got;
  if (!(in >> got) || got != word) {
    throw ParseError("expected keyword '" + word + "'");
  }
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw ParseError("empty instance file");
  {
    std::istringstream ls(line);
    expect_word(ls, "mssc");
    if (parse_int(ls, "format version") != 1) {
      throw ParseError("unsupported instance format version");
    }
  }
  if (!next_line(in, line)) throw ParseError("missing size line");
  long long n, T;
  {
    std::istringstream ls(line);
    expect_word(ls, "n");
    n = parse_int(ls, "n");
    expect_word(ls, "T");
    T = parse_int(ls, "T");
  }
  if (n < 1 || n > 10'000'000) throw ParseError("n out of range");
  if (T < 0 || T > 10'000'000) throw ParseError("T out of range");

  Instance inst;
  inst.n = static_cast<int>(n);
  if (!next_line(in, line)) throw ParseError("missing pi0 line");
  {
    std::istringstream ls(line);
    expect_word(ls, "pi0");
    std::vector<ElementId> order(n);
    for (long long i = 0; i < n; ++i) {
      order[i] = static_cast<ElementId>(parse_int(ls, "pi0 entry"));
    }
    try {
      inst.pi0 = Permutation(std::move(order));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("bad pi0: ") + e.what());
    }
  }
  inst.requests.reserve(T);
  for (long long t = 0; t < T; ++t) {
    if (!next_line(in, line)) throw ParseError("missing request line");
    std::istringstream ls(line);
    expect_word(ls, "req");
    const long long k = parse_int(ls, "request size");
    if (k < 1 || k > n) throw ParseError("request size out of range");
    std::vector<ElementId> members(k);
    for (long long i = 0; i < k; ++i) {
      members[i] = static_cast<ElementId>(parse_int(ls, "request member"));
    }
    inst.requests.emplace_back(std::move(members));
  }
  const auto violations = validate_instance(inst);
  if (!violations.empty()) {
    throw ParseError("invalid instance: " + violations.front());
  }
  return inst;
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream os;
  os << "mssc 1\n";
  os << "n " << inst.n << " T " << inst.horizon() << "\n";
  os << "pi0";
  for (ElementId e : inst.pi0.order()) os << " " << e;
  os << "\n";
  for (const Request& req : inst.requests) {
    os << "req " << req.size();
    for (ElementId e : req.members) os << " " << e;
    os << "\n";
  }
  return os.str();
}

SetCoverInstance parse_setcover(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw ParseError("empty set-cover file");
  {
    std::istringstream ls(line);
    expect_word(ls, "setcover");
    if (parse_int(ls, "format version") != 1) {
      throw ParseError("unsupported set-cover format version");
    }
  }
  if (!next_line(in, line)) throw ParseError("missing size line");
  long long n_sc, m;
  {
    std::istringstream ls(line);
    expect_word(ls, "elements");
    n_sc = parse_int(ls, "elements");
    expect_word(ls, "sets");
    m = parse_int(ls, "sets");
  }
  if (n_sc < 1 || n_sc > 1'000'000) throw ParseError("element count out of range");
  if (m < 1 || m > 1'000'000) throw ParseError("set count out of range");

  SetCoverInstance sc;
  sc.n_elements = static_cast<int>(n_sc);
  sc.sets.reserve(m);
  for (long long s = 0; s < m; ++s) {
    if (!next_line(in, line)) throw ParseError("missing set line");
    std::istringstream ls(line);
    expect_word(ls, "set");
    const long long k = parse_int(ls, "set size");
    if (k < 1 || k > n_sc) throw ParseError("set size out of range");
    std::vector<int> members(k);
    for (long long i = 0; i < k; ++i) {
      members[i] = static_cast<int>(parse_int(ls, "set member"));
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    sc.sets.push_back(std::move(members));
  }
  const auto violations = validate_setcover(sc);
  if (!violations.empty()) {
    throw ParseError("invalid set-cover instance: " + violations.front());
  }
  return sc;
}

SetCoverInstance parse_setcover_text(const std::string& text) {
  std::istringstream in(text);
  return parse_setcover(in);
}

std::string serialize_setcover(const SetCoverInstance& sc) {
  std::ostringstream os;
  os << "setcover 1\n";
  os << "elements " << sc.n_elements << " sets " << sc.sets.size() << "\n";
  for (const auto& set : sc.sets) {
    os << "set " << set.size();
    for (int e : set) os << " " << e;
    os << "\n";
  }
  return os.str();
}

Instance generate_instance(int n, int T, int r, GenDistribution dist,
                           std::uint64_t seed) {
  if (n < 1 || T < 1 || r < 1 || r > n) {
    throw std::invalid_argument("need 1 <= r <= n and T >= 1");
  }
  SplitMix64 gen(seed);
  Instance inst;
  inst.n = n;
  inst.pi0 = Permutation::identity(n);
  inst.requests.reserve(T);
  std::vector<ElementId> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int t = 0; t < T; ++t) {
    const int k = dist == GenDistribution::UniformR
                      ? r
                      : 1 + static_cast<int>(gen.next_below(r));
    // Partial Fisher-Yates: the first k entries are a uniform k-subset.
    for (int i = 0; i < k; ++i) {
      const int j = i + static_cast<int>(gen.next_below(n - i));
      std::swap(pool[i], pool[j]);
    }
    inst.requests.emplace_back(std::vector<ElementId>(pool.begin(), pool.begin() + k));
  }
  return inst;
}

}  // namespace mssc
