#include "kfunclab/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "kfunclab/errors.hpp"

namespace kfunclab {

namespace {

using nlohmann::json;

// Forward iterator over the input text that counts consumed newlines, so
// parser callbacks can tell which line an element started on.
class LineCountingIterator {
 public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  LineCountingIterator() = default;
  LineCountingIterator(const char* position, std::size_t* line) : position_(position), line_(line) {}

  reference operator*() const { return *position_; }
  LineCountingIterator& operator++() {
    if (*position_ == '\n') ++*line_;
    ++position_;
    return *this;
  }
  LineCountingIterator operator++(int) {
    LineCountingIterator copy = *this;
    ++*this;
    return copy;
  }
  bool operator==(const LineCountingIterator& other) const { return position_ == other.position_; }

 private:
  const char* position_ = nullptr;
  std::size_t* line_ = nullptr;
};

class SchemaContext {
 public:
  SchemaContext(std::string_view source, std::size_t line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& message) const {
    std::ostringstream out;
    out << source_ << ':' << line_ << ": " << message;
    throw InputError(out.str());
  }

  double number(const json& object, const char* key) const {
    const auto it = object.find(key);
    if (it == object.end()) fail(std::string("missing field \"") + key + "\"");
    if (!it->is_number()) fail(std::string("field \"") + key + "\" must be a number");
    const double value = it->get<double>();
    if (!std::isfinite(value)) fail(std::string("field \"") + key + "\" must be finite");
    return value;
  }

  void only_keys(const json& object, std::initializer_list<const char*> allowed) const {
    for (const auto& [key, value] : object.items()) {
      bool known = false;
      for (const char* name : allowed) known = known || key == name;
      if (!known) fail("unknown field \"" + key + "\"");
    }
  }

  std::vector<std::pair<double, double>> pairs(const json& array, const char* what) const {
    if (!array.is_array()) fail(std::string("\"") + what + "\" must be an array of pairs");
    std::vector<std::pair<double, double>> out;
    for (const json& item : array) {
      if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
        fail(std::string("\"") + what + "\" entries must be [number, number]");
      }
      out.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return out;
  }

 private:
  std::string_view source_;
  std::size_t line_;
};

CoordinateEntry parse_coordinate(const json& item, const SchemaContext& where) {
  if (!item.is_object()) where.fail("coordinate must be an object");
  if (item.contains("scalar")) {
    where.only_keys(item, {"scalar"});
    const json& body = item["scalar"];
    if (!body.is_object()) where.fail("\"scalar\" must be an object");
    where.only_keys(body, {"mu", "a", "b", "x"});
    ScalarEntry entry;
    entry.mu = where.number(body, "mu");
    entry.couple = {where.number(body, "a"), where.number(body, "b"), where.number(body, "x")};
    if (!(entry.mu > 0.0)) where.fail("scalar mu must be > 0");
    if (!(entry.couple.a > 0.0) || !(entry.couple.b > 0.0)) where.fail("scalar a, b must be > 0");
    return entry;
  }
  if (item.contains("profile")) {
    where.only_keys(item, {"profile"});
    const json& body = item["profile"];
    if (!body.is_object()) where.fail("\"profile\" must be an object");
    where.only_keys(body, {"mu", "k"});
    ProfileEntry entry;
    entry.mu = where.number(body, "mu");
    if (!(entry.mu > 0.0)) where.fail("profile mu must be > 0");
    if (!body.contains("k")) where.fail("missing field \"k\"");
    entry.k = where.pairs(body["k"], "k");
    for (std::size_t j = 0; j < entry.k.size(); ++j) {
      const auto [s, v] = entry.k[j];
      if (!(std::isfinite(s) && s > 0.0) || !(std::isfinite(v) && v >= 0.0)) {
        where.fail("k entry " + std::to_string(j) + " needs s > 0 and value >= 0");
      }
      if (j > 0 && !(s > entry.k[j - 1].first)) {
        where.fail("k breakpoints must be strictly increasing (entry " + std::to_string(j) + ")");
      }
      if (j > 0 && v > entry.k[j - 1].second) {
        where.fail("k values must be nonincreasing (entry " + std::to_string(j) + ")");
      }
    }
    return entry;
  }
  if (item.contains("levels")) {
    where.only_keys(item, {"levels", "mu"});
    LevelsEntry entry;
    if (item.contains("mu")) entry.mu = where.number(item, "mu");
    if (!(entry.mu > 0.0)) where.fail("levels mu must be > 0");
    for (const auto& [value, mass] : where.pairs(item["levels"], "levels")) {
      if (!(std::isfinite(value) && value >= 0.0) || !(std::isfinite(mass) && mass > 0.0)) {
        where.fail("levels entries need value >= 0 and mass > 0");
      }
      entry.levels.push_back({value, mass});
    }
    return entry;
  }
  where.fail("coordinate must have one of \"scalar\", \"profile\", \"levels\"");
}

json to_json(const CoordinateEntry& entry) {
  return std::visit(
      [](const auto& e) -> json {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, ScalarEntry>) {
          return {{"scalar", {{"mu", e.mu}, {"a", e.couple.a}, {"b", e.couple.b}, {"x", e.couple.x}}}};
        } else if constexpr (std::is_same_v<T, ProfileEntry>) {
          json k = json::array();
          for (const auto& [s, v] : e.k) k.push_back({s, v});
          return {{"profile", {{"mu", e.mu}, {"k", k}}}};
        } else {
          json levels = json::array();
          for (const Level& l : e.levels) levels.push_back({l.value, l.mass});
          return {{"levels", levels}, {"mu", e.mu}};
        }
      },
      entry);
}

}  // namespace

Instance parse_instance(std::string_view text, std::string_view source) {
  std::size_t line = 1;
  std::vector<std::size_t> coordinate_lines;
  std::string last_top_key;
  json::parser_callback_t track = [&](int depth, json::parse_event_t event, json& parsed) {
    if (event == json::parse_event_t::key && depth == 1) {
      last_top_key = parsed.get<std::string>();
    } else if (depth == 2 && last_top_key == "coordinates" &&
               (event == json::parse_event_t::object_start ||
                event == json::parse_event_t::array_start ||
                event == json::parse_event_t::value)) {
      coordinate_lines.push_back(line);
    }
    return true;
  };

  json document;
  try {
    document = json::parse(LineCountingIterator(text.data(), &line),
                           LineCountingIterator(text.data() + text.size(), &line), track);
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based offset of the last character read.
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t error_line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++error_line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream out;
    out << source << ':' << error_line << ':' << column << ": " << e.what();
    throw InputError(out.str());
  }

  const SchemaContext top(source, 1);
  if (!document.is_object()) top.fail("instance must be a JSON object");
  top.only_keys(document, {"version", "coordinates"});
  if (!document.contains("version") || !document["version"].is_number_integer()) {
    top.fail("missing integer field \"version\"");
  }
  Instance instance;
  instance.version = document["version"].get<int>();
  if (instance.version != kInstanceVersion) {
    top.fail("unsupported version " + std::to_string(instance.version));
  }
  if (!document.contains("coordinates") || !document["coordinates"].is_array()) {
    top.fail("missing array field \"coordinates\"");
  }
  const json& coordinates = document["coordinates"];
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    const std::size_t at = i < coordinate_lines.size() ? coordinate_lines[i] : 1;
    instance.coordinates.push_back(parse_coordinate(coordinates[i], SchemaContext(source, at)));
  }
  return instance;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_instance(text, path.string());
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << "{\"version\": " << instance.version << ", \"coordinates\": [";
  for (std::size_t i = 0; i < instance.coordinates.size(); ++i) {
    out << (i == 0 ? "\n  " : ",\n  ") << to_json(instance.coordinates[i]).dump();
  }
  out << (instance.coordinates.empty() ? "]}\n" : "\n]}\n");
  return out.str();
}

SimpleVectorFunction to_vector_function(const Instance& instance) {
  SimpleVectorFunction f;
  for (const CoordinateEntry& entry : instance.coordinates) {
    std::visit(
        [&f](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, ScalarEntry>) {
            f.add(e.mu, scalar_couple_profile(e.couple));
          } else if constexpr (std::is_same_v<T, ProfileEntry>) {
            std::vector<double> breaks;
            std::vector<double> values;
            for (const auto& [s, v] : e.k) {
              breaks.push_back(s);
              values.push_back(v);
            }
            f.add(e.mu, KProfile(StepFunction(std::move(breaks), std::move(values), 0.0)));
          } else {
            f.add(e.mu, l1_linf_profile(e.levels));
          }
        },
        entry);
  }
  return f;
}

std::optional<ScalarInstance> as_scalar_instance(const Instance& instance) {
  ScalarInstance out;
  for (const CoordinateEntry& entry : instance.coordinates) {
    const auto* scalar = std::get_if<ScalarEntry>(&entry);
    if (scalar == nullptr) return std::nullopt;
    out.coords.push_back({scalar->mu, scalar->couple});
  }
  return out;
}

}  // namespace kfunclab
