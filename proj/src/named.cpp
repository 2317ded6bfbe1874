#include "sharbly/named.hpp"

namespace sharbly {

namespace {

Col C(std::initializer_list<long> xs) { return Col(xs.begin(), xs.end()); }

}  // namespace

Chain z1() { return make_basic(1, {C({1})}); }

Chain z2() {
  return make_basic(2, {C({1, 0}), C({0, 1}), C({1, -1})});
}

Chain z3() {
  return make_basic(3, {C({1, 0, 0}), C({0, 1, 0}), C({0, 0, 1}),
                        C({1, -1, 0}), C({0, 1, -1}), C({1, 0, -1})});
}

Chain z4() { return compose(z3(), z1()); }

Chain z3k(int k) {
  if (k < 1) throw SharblyError("unknown name: z3k needs k >= 1");
  Chain z = z3();
  for (int j = 2; j <= k; ++j) z = compose(z3(), z);
  return z;
}

Chain z3k1(int k) {
  if (k < 1) throw SharblyError("unknown name: z3k1 needs k >= 1");
  Chain z = z1();
  for (int j = 1; j <= k; ++j) z = compose(z3(), z);
  return z;
}

Chain build_named(const std::string& name) {
  if (name == "z1") return z1();
  if (name == "z2") return z2();
  if (name == "z3") return z3();
  if (name == "z4") return z4();
  auto parse_k = [&](const std::string& head) -> int {
    // head(k) with a positive decimal k
    if (name.size() < head.size() + 3 || name.compare(0, head.size(), head) != 0 ||
        name[head.size()] != '(' || name.back() != ')')
      return -1;
    int k = 0;
    for (size_t i = head.size() + 1; i + 1 < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') return -1;
      k = k * 10 + (name[i] - '0');
      if (k > 1000) return -1;
    }
    return k;
  };
  if (int k = parse_k("z3k1"); k >= 1) return z3k1(k);
  if (int k = parse_k("z3k"); k >= 1) return z3k(k);
  throw SharblyError("unknown name: " + name);
}

}  // namespace sharbly
