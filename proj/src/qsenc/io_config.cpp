/*
 * Copyright 2026 The qsenc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "qsenc/error.hpp"
#include "qsenc/io.hpp"
#include "qsenc/io_text.hpp"

namespace qsenc {

namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::size_t line = 0;
  std::map<std::string, Entry, std::less<>> entries;
};

using Document = std::map<std::string, Section, std::less<>>;

Document parse_document(std::string_view text, const std::string &source) {
  Document doc;
  Section *current = nullptr;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty())
      continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError(source, line_no, "unterminated section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name.empty())
        throw ParseError(source, line_no, "empty section name");
      if (doc.contains(name))
        throw ParseError(source, line_no, "duplicate section [" + name + "]");
      current = &doc[name];
      current->line = line_no;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(source, line_no, "expected key = value");
    if (current == nullptr)
      throw ParseError(source, line_no, "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty())
      throw ParseError(source, line_no, "expected key = value");
    if (current->entries.contains(key))
      throw ParseError(source, line_no, "duplicate key '" + key + "'");
    current->entries[key] = {value, line_no};
  }
  return doc;
}

class SectionReader {
public:
  SectionReader(const Section *section, std::string name, const std::string &source)
      : section_(section), name_(std::move(name)), source_(source) {}

  bool present() const { return section_ != nullptr; }
  bool has(std::string_view key) const {
    return section_ != nullptr && section_->entries.contains(key);
  }

  const Entry *find(std::string_view key) {
    if (section_ == nullptr)
      return nullptr;
    auto it = section_->entries.find(key);
    if (it == section_->entries.end())
      return nullptr;
    used_.insert(it->first);
    return &it->second;
  }

  const Entry &require(std::string_view key) {
    const Entry *e = find(key);
    if (e == nullptr) {
      throw ParseError(source_, section_ ? section_->line : 0,
                       "[" + name_ + "] is missing '" + std::string(key) + "'");
    }
    return *e;
  }

  template <typename Fn> auto convert(const Entry &e, std::string_view key, Fn &&fn) {
    try {
      return fn(e.value);
    } catch (const Error &err) {
      throw ParseError(source_, e.line,
                       "[" + name_ + "] " + std::string(key) + ": " + err.what());
    }
  }

  void reject_unknown() const {
    if (section_ == nullptr)
      return;
    for (const auto &[key, entry] : section_->entries) {
      if (!used_.contains(key))
        throw ParseError(source_, entry.line, "[" + name_ + "] unknown key '" + key + "'");
    }
  }

private:
  const Section *section_;
  std::string name_;
  const std::string &source_;
  std::set<std::string> used_;
};

const Section *lookup(const Document &doc, std::string_view name) {
  auto it = doc.find(name);
  return it == doc.end() ? nullptr : &it->second;
}

void read_registers(SectionReader &reader, RegisterSettings &regs, bool &set_decay,
                    bool &set_growth) {
  auto real = [&](std::string_view key, double &out) {
    if (const Entry *e = reader.find(key)) {
      out = reader.convert(*e, key, [](const std::string &v) { return parse_real_or_literal(v); });
      return true;
    }
    return false;
  };
  set_decay = real("decay_rate", regs.decay_rate);
  set_growth = real("growth_rate", regs.growth_rate);
  real("v_threshold", regs.v_threshold);
  real("v_reset", regs.v_reset);
  if (const Entry *e = reader.find("reset_mode"))
    regs.reset_mode =
        reader.convert(*e, "reset_mode", [](const std::string &v) { return parse_reset_mode(v); });
  if (const Entry *e = reader.find("refractory_period"))
    regs.refractory_period = reader.convert(*e, "refractory_period", [](const std::string &v) {
      return parse_uint32(v);
    });
  reader.reject_unknown();
}

} // namespace

CoreConfig parse_config(std::string_view text, const std::string &source) {
  const Document doc = parse_document(text, source);
  for (const auto &[name, section] : doc) {
    const bool known = name == "format" || name == "layers" || name == "registers" ||
                       name == "mapping" || name == "metrics" || name.starts_with("registers.");
    if (!known)
      throw ParseError(source, section.line, "unknown section [" + name + "]");
  }

  CoreConfig cfg;

  SectionReader format(lookup(doc, "format"), "format", source);
  if (!format.present())
    throw ParseError(source, 0, "missing [format] section");
  {
    const Entry &n = format.require("n");
    const Entry &q = format.require("q");
    const int nv = static_cast<int>(format.convert(n, "n", parse_uint32));
    const int qv = static_cast<int>(format.convert(q, "q", parse_uint32));
    cfg.format = format.convert(n, "n", [&](const std::string &) { return QFormat(nv, qv); });
    if (const Entry *p = format.find("policy"))
      cfg.policy = format.convert(*p, "policy", [](const std::string &v) { return parse_overflow(v); });
    format.reject_unknown();
  }

  SectionReader layers(lookup(doc, "layers"), "layers", source);
  if (!layers.present())
    throw ParseError(source, 0, "missing [layers] section");
  const Entry &sizes_entry = layers.require("sizes");
  const auto sizes = layers.convert(sizes_entry, "sizes", [](const std::string &v) {
    std::vector<std::uint32_t> out;
    for (std::string_view item : split_list(v))
      out.push_back(parse_uint32(item));
    return out;
  });
  if (sizes.size() < 2)
    throw ParseError(source, sizes_entry.line, "[layers] sizes needs N0 and at least one layer");
  cfg.input_width = sizes[0];
  const std::size_t k_layers = sizes.size() - 1;
  cfg.layers.resize(k_layers);
  for (std::size_t k = 0; k < k_layers; ++k)
    cfg.layers[k].size = sizes[k + 1];

  auto broadcast = [&](const Entry &e, std::string_view key) {
    std::vector<std::string> items;
    for (std::string_view s : split_list(e.value))
      items.emplace_back(s);
    if (items.size() == 1)
      items.resize(k_layers, items.front());
    if (items.size() != k_layers) {
      throw ParseError(source, e.line,
                       "[layers] " + std::string(key) + " needs 1 or " +
                           std::to_string(k_layers) + " entries");
    }
    return items;
  };
  if (const Entry *e = layers.find("connectivity")) {
    const auto items = broadcast(*e, "connectivity");
    for (std::size_t k = 0; k < k_layers; ++k)
      cfg.layers[k].connectivity.kind = layers.convert(
          *e, "connectivity", [&](const std::string &) { return parse_connectivity(items[k]); });
  }
  if (const Entry *e = layers.find("radius")) {
    const auto items = broadcast(*e, "radius");
    for (std::size_t k = 0; k < k_layers; ++k)
      cfg.layers[k].connectivity.radius =
          layers.convert(*e, "radius", [&](const std::string &) { return parse_uint32(items[k]); });
  }
  if (const Entry *e = layers.find("layer_latency"))
    cfg.layer_latency = layers.convert(*e, "layer_latency", parse_uint32);
  layers.reject_unknown();

  SectionReader mapping(lookup(doc, "mapping"), "mapping", source);
  std::optional<RateRegisters> mapped;
  if (mapping.present()) {
    PhysicalMapping m;
    auto real = [&](std::string_view key, double &out) {
      if (const Entry *e = mapping.find(key))
        out = mapping.convert(*e, key, parse_real);
    };
    real("r", m.r_ohm);
    real("c", m.c_farad);
    real("dt", m.dt_s);
    real("v_unit", m.v_unit);
    real("i_unit", m.i_unit);
    mapping.reject_unknown();
    try {
      mapped = registers_from_physical(m);
    } catch (const Error &e) {
      throw ParseError(source, lookup(doc, "mapping")->line, std::string("[mapping] ") + e.what());
    }
    cfg.mapping = m;
  }

  RegisterSettings base;
  {
    SectionReader reader(lookup(doc, "registers"), "registers", source);
    bool set_decay = false;
    bool set_growth = false;
    read_registers(reader, base, set_decay, set_growth);
    if (mapped && (set_decay || set_growth)) {
      throw ParseError(source, lookup(doc, "registers")->line,
                       "[registers] sets decay_rate/growth_rate that [mapping] also derives");
    }
    if (mapped) {
      base.decay_rate = mapped->decay_rate;
      base.growth_rate = mapped->growth_rate;
    }
  }
  for (auto &layer : cfg.layers)
    layer.registers = base;
  for (const auto &[name, section] : doc) {
    if (!name.starts_with("registers."))
      continue;
    std::uint32_t k = 0;
    try {
      k = parse_uint32(std::string_view(name).substr(10));
    } catch (const Error &) {
      throw ParseError(source, section.line, "bad layer index in [" + name + "]");
    }
    if (k >= k_layers)
      throw ParseError(source, section.line, "[" + name + "] but the core has " +
                                                 std::to_string(k_layers) + " layers");
    SectionReader reader(&section, name, source);
    bool set_decay = false;
    bool set_growth = false;
    read_registers(reader, cfg.layers[k].registers, set_decay, set_growth);
  }

  SectionReader metrics(lookup(doc, "metrics"), "metrics", source);
  if (const Entry *e = metrics.find("n_ops"))
    cfg.n_ops = metrics.convert(*e, "n_ops", parse_uint32);
  metrics.reject_unknown();

  try {
    cfg.validate();
  } catch (const ParseError &) {
    throw;
  } catch (const Error &e) {
    throw ParseError(source, 0, e.what());
  }
  return cfg;
}

CoreConfig load_config(const std::filesystem::path &path) {
  return parse_config(read_text_file(path), path.string());
}

std::string write_config(const CoreConfig &cfg) {
  std::ostringstream os;
  os << "[format]\n"
     << "n = " << cfg.format.n() << "\n"
     << "q = " << cfg.format.q() << "\n"
     << "policy = " << overflow_name(cfg.policy) << "\n\n";

  os << "[layers]\nsizes = " << cfg.input_width;
  for (const auto &l : cfg.layers)
    os << ", " << l.size;
  os << "\nconnectivity = ";
  for (std::size_t k = 0; k < cfg.layers.size(); ++k)
    os << (k ? ", " : "") << connectivity_name(cfg.layers[k].connectivity.kind);
  os << "\nradius = ";
  for (std::size_t k = 0; k < cfg.layers.size(); ++k)
    os << (k ? ", " : "") << cfg.layers[k].connectivity.radius;
  os << "\nlayer_latency = " << cfg.layer_latency << "\n\n";

  if (cfg.mapping) {
    const PhysicalMapping &m = *cfg.mapping;
    os << "[mapping]\n"
       << "r = " << format_double(m.r_ohm) << "\n"
       << "c = " << format_double(m.c_farad) << "\n"
       << "dt = " << format_double(m.dt_s) << "\n"
       << "v_unit = " << format_double(m.v_unit) << "\n"
       << "i_unit = " << format_double(m.i_unit) << "\n\n";
  }

  for (std::size_t k = 0; k < cfg.layers.size(); ++k) {
    const RegisterSettings &r = cfg.layers[k].registers;
    os << "[registers." << k << "]\n"
       << "decay_rate = " << format_double(r.decay_rate) << "\n"
       << "growth_rate = " << format_double(r.growth_rate) << "\n"
       << "v_threshold = " << format_double(r.v_threshold) << "\n"
       << "reset_mode = " << reset_mode_name(r.reset_mode) << "\n"
       << "v_reset = " << format_double(r.v_reset) << "\n"
       << "refractory_period = " << r.refractory_period << "\n\n";
  }

  os << "[metrics]\nn_ops = " << cfg.n_ops << "\n";
  return os.str();
}

std::uint64_t config_hash(const CoreConfig &config) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : write_config(config)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string config_hash_hex(const CoreConfig &config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(config)));
  return buf;
}

} // namespace qsenc
