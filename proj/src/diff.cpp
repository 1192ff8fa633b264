// SPDX-License-Identifier: Apache-2.0

#include "arctext/diff.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace arctext {
namespace {

std::vector<Field> all_fields(const UnitLine& line) {
  auto fields = line.fields;
  fields.push_back({"connect_to", line.connect_to ? join_ints(*line.connect_to) : "Null"});
  return fields;
}

void diff_fields(const UnitLine& a, const UnitLine& b, std::vector<DiffEntry>& out) {
  const auto fa = all_fields(a);
  const auto fb = all_fields(b);
  // keys keep their schema order; a key present on one side only (act_fun)
  // is reported where it occurs
  std::vector<std::string> keys;
  for (const auto& f : fa) keys.push_back(f.key);
  for (const auto& f : fb) {
    if (std::find(keys.begin(), keys.end(), f.key) == keys.end()) keys.insert(keys.end() - 1, f.key);
  }
  auto lookup = [](const std::vector<Field>& fs, const std::string& key) -> std::optional<std::string> {
    for (const auto& f : fs) {
      if (f.key == key) return f.value;
    }
    return std::nullopt;
  };
  for (const auto& key : keys) {
    auto va = lookup(fa, key);
    auto vb = lookup(fb, key);
    if (va != vb) out.push_back({DiffKind::FieldChanged, a.id, key, std::move(va), std::move(vb)});
  }
}

}  // namespace

DescriptionDiff diff_descriptions(const Description& a, const Description& b) {
  DescriptionDiff d;
  d.a_lines = a.lines.size();
  d.b_lines = b.lines.size();

  std::map<Int, const UnitLine*> left, right;
  for (const auto& l : a.lines) left[l.id] = &l;
  for (const auto& l : b.lines) right[l.id] = &l;

  std::map<Int, int> ids;
  for (const auto& [id, _] : left) ids[id] |= 1;
  for (const auto& [id, _] : right) ids[id] |= 2;

  for (const auto& [id, sides] : ids) {
    if (sides == 1) {
      d.entries.push_back({DiffKind::OnlyInA, id, {}, left[id]->text(), std::nullopt});
    } else if (sides == 2) {
      d.entries.push_back({DiffKind::OnlyInB, id, {}, std::nullopt, right[id]->text()});
    } else if (left[id]->kind != right[id]->kind) {
      d.entries.push_back({DiffKind::KindChanged, id, {}, left[id]->text(), right[id]->text()});
    } else {
      diff_fields(*left[id], *right[id], d.entries);
    }
  }
  return d;
}

std::string format_diff(const DescriptionDiff& diff) {
  std::ostringstream os;
  auto show = [](const std::optional<std::string>& v) { return v ? *v : std::string("(absent)"); };
  for (const auto& e : diff.entries) {
    switch (e.kind) {
      case DiffKind::OnlyInA: os << "- " << *e.a_value << '\n'; break;
      case DiffKind::OnlyInB: os << "+ " << *e.b_value << '\n'; break;
      case DiffKind::KindChanged:
        os << "- " << *e.a_value << '\n' << "+ " << *e.b_value << '\n';
        break;
      case DiffKind::FieldChanged:
        os << "~ id:" << e.id << ' ' << e.key << ": " << show(e.a_value) << " -> " << show(e.b_value) << '\n';
        break;
    }
  }
  return os.str();
}

}  // namespace arctext
