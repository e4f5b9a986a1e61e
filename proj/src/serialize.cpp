#include "madic/serialize.hpp"

#include "madic/errors.hpp"

namespace madic {

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParameterMismatch(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParameterMismatch(std::string("field '") + key + "' has the wrong type");
  }
}

GroupParams params_from(const json& j) { return {field<int>(j, "m"), field<int>(j, "s")}; }

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Seed:
      return "seed";
    case StepKind::Descend:
      return "descend";
    case StepKind::Multiply:
      return "multiply";
  }
  return "?";
}

StepKind step_kind_from(const std::string& name) {
  if (name == "seed") return StepKind::Seed;
  if (name == "descend") return StepKind::Descend;
  if (name == "multiply") return StepKind::Multiply;
  throw ParameterMismatch("unknown step kind '" + name + "'");
}

}  // namespace

json word_to_json(const Word& w) {
  json out = json::array();
  for (const Letter& l : w.letters()) out.push_back({l.index, l.exponent});
  return out;
}

Word word_from_json(const json& j) {
  if (!j.is_array()) throw ParameterMismatch("a word must be a list of [index, exponent] pairs");
  Word w;
  for (const json& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer()) {
      throw ParameterMismatch("malformed letter " + item.dump());
    }
    const int index = item[0].get<int>();
    const int exponent = item[1].get<int>();
    if (index < 0) throw ParameterMismatch("negative generator index " + item.dump());
    if (exponent != 1 && exponent != -1) throw ParameterMismatch("exponent must be +-1 in " + item.dump());
    w.push_back({index, exponent});
  }
  return w;
}

json word_record(const GroupParams& params, const Word& w) {
  return {{"m", params.m}, {"s", params.s}, {"word", word_to_json(w)}};
}

WordRecord parse_word_record(const json& j) {
  WordRecord r{params_from(j), word_from_json(j.contains("word") ? j.at("word") : json())};
  check_word(r.params, r.word);
  return r;
}

json witness_to_json(const NormalizationWitness& w) {
  return {{"vertex", to_string(w.vertex)},
          {"power_exponent", w.exponent_j},
          {"pi", w.result.pi},
          {"signs", w.result.signs},
          {"result_word", word_to_json(w.result.word())},
          {"certificate_word", word_to_json(w.certificate)}};
}

NormalizationWitness witness_from_json(const GroupParams& params, const json& j) {
  NormalizationWitness w;
  w.vertex = Vertex::parse(params, field<std::string>(j, "vertex"));
  w.exponent_j = field<int>(j, "power_exponent");
  w.result.pi = field<std::vector<int>>(j, "pi");
  w.result.signs = field<std::vector<int>>(j, "signs");
  w.certificate = word_from_json(j.at("certificate_word"));
  return w;
}

json report_to_json(const LemmaReport& r) {
  return {{"lemma", r.lemma},
          {"instances_checked", r.instances_checked},
          {"violations", r.violations},
          {"unverified", r.unverified}};
}

json transcript_to_json(const Transcript& t) {
  json seeds = json::array();
  for (const Word& w : t.seeds) seeds.push_back(word_to_json(w));
  json steps = json::array();
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const Step& st = t.steps[i];
    json item = {{"id", i},
                 {"kind", step_kind_name(st.kind)},
                 {"vertex", to_string(st.vertex)},
                 {"word", word_to_json(st.word)}};
    switch (st.kind) {
      case StepKind::Seed:
        item["seed"] = st.seed;
        break;
      case StepKind::Descend:
        item["input"] = st.input;
        item["digit"] = st.digit;
        item["power"] = st.power;
        break;
      case StepKind::Multiply:
        item["left"] = st.left;
        item["left_exponent"] = st.left_exponent;
        item["right"] = st.right;
        item["right_exponent"] = st.right_exponent;
        break;
    }
    steps.push_back(std::move(item));
  }
  json moves = json::array();
  for (const Move& mv : t.moves) {
    moves.push_back({{"kind", mv.kind},
                     {"detail", mv.detail},
                     {"first_step", mv.first_step},
                     {"last_step", mv.last_step},
                     {"inputs", mv.inputs},
                     {"outputs", mv.outputs},
                     {"verified", mv.verified}});
  }
  json final_parts = json::array();
  for (int id : t.final_parts) {
    final_parts.push_back({{"step", id}, {"word", word_to_json(t.steps.at(static_cast<std::size_t>(id)).word)}});
  }
  return {{"m", t.params.m},
          {"s", t.params.s},
          {"seeds", seeds},
          {"steps", steps},
          {"moves", moves},
          {"final_vertex", to_string(t.final_vertex)},
          {"final_parts", final_parts},
          {"status", t.status},
          {"failure", t.failure}};
}

Transcript transcript_from_json(const json& j) {
  Transcript t(params_from(j));
  for (const json& w : field<json>(j, "seeds")) t.seeds.push_back(word_from_json(w));
  for (const json& item : field<json>(j, "steps")) {
    Step st;
    st.kind = step_kind_from(field<std::string>(item, "kind"));
    st.vertex = Vertex::parse(t.params, field<std::string>(item, "vertex"));
    st.word = word_from_json(field<json>(item, "word"));
    switch (st.kind) {
      case StepKind::Seed:
        st.seed = field<int>(item, "seed");
        break;
      case StepKind::Descend:
        st.input = field<int>(item, "input");
        st.digit = field<int>(item, "digit");
        st.power = field<int>(item, "power");
        break;
      case StepKind::Multiply:
        st.left = field<int>(item, "left");
        st.left_exponent = field<int>(item, "left_exponent");
        st.right = field<int>(item, "right");
        st.right_exponent = field<int>(item, "right_exponent");
        break;
    }
    t.steps.push_back(std::move(st));
  }
  for (const json& item : field<json>(j, "moves")) {
    Move mv;
    mv.kind = field<std::string>(item, "kind");
    mv.detail = field<std::string>(item, "detail");
    mv.first_step = field<std::size_t>(item, "first_step");
    mv.last_step = field<std::size_t>(item, "last_step");
    mv.inputs = field<std::vector<int>>(item, "inputs");
    mv.outputs = field<std::vector<int>>(item, "outputs");
    mv.verified = field<bool>(item, "verified");
    t.moves.push_back(std::move(mv));
  }
  t.final_vertex = Vertex::parse(t.params, field<std::string>(j, "final_vertex"));
  for (const json& item : field<json>(j, "final_parts")) t.final_parts.push_back(field<int>(item, "step"));
  t.status = field<std::string>(j, "status");
  if (j.contains("failure")) t.failure = field<std::string>(j, "failure");
  return t;
}

}  // namespace madic
