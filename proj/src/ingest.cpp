#include "kgp/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <json.hpp>

#include "embedded_data.hpp"
#include "kgp/error.hpp"
#include "kgp/log.hpp"
#include "kgp/text.hpp"

namespace kgp {

using nlohmann::json;

namespace {

std::vector<std::string> split_lines(std::string_view bytes) {
  if (bytes.size() >= 3 && bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
  std::vector<std::string> lines = text::split(bytes, '\n');
  for (auto& l : lines)
    if (!l.empty() && l.back() == '\r') l.pop_back();
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

bool is_blank(std::string_view s) { return text::trim(s).empty(); }

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

double parse_real(std::string_view s, long line, std::string_view what) {
  const std::string t = text::trim(s);
  double v = 0.0;
  if (!parse_number(std::string_view(t), v))
    throw ParseError("invalid " + std::string(what) + " '" + t + "'", line);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

long parse_srt_timestamp(std::string_view stamp, long line) {
  const std::string s = text::trim(stamp);
  // HH:MM:SS,mmm (a '.' before the milliseconds is accepted too)
  const auto fail = [&]() -> long { throw ParseError("malformed timestamp '" + s + "'", line); };
  const auto c1 = s.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : s.find(':', c1 + 1);
  const auto dot = c2 == std::string::npos ? c2 : s.find_first_of(",.", c2 + 1);
  if (dot == std::string::npos) return fail();
  long h = 0, m = 0, sec = 0, ms = 0;
  const std::string_view v(s);
  if (!parse_number(v.substr(0, c1), h) || !parse_number(v.substr(c1 + 1, c2 - c1 - 1), m) ||
      !parse_number(v.substr(c2 + 1, dot - c2 - 1), sec) ||
      !parse_number(v.substr(dot + 1), ms))
    return fail();
  if (h < 0 || m < 0 || m > 59 || sec < 0 || sec > 59 || ms < 0 || ms > 999 ||
      v.size() - dot - 1 != 3)
    return fail();
  return ((h * 60 + m) * 60 + sec) * 1000 + ms;
}

std::string format_srt_timestamp(long ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02ld:%02ld:%02ld,%03ld", ms / 3600000, (ms / 60000) % 60,
                (ms / 1000) % 60, ms % 1000);
  return buf;
}

TranscriptDoc parse_srt(std::string_view bytes, std::string video_id) {
  TranscriptDoc doc;
  doc.video_id = std::move(video_id);
  const auto lines = split_lines(bytes);
  std::size_t i = 0;
  while (i < lines.size()) {
    if (is_blank(lines[i])) {
      ++i;
      continue;
    }
    const long index_line = static_cast<long>(i) + 1;
    SubtitleEntry e;
    const std::string idx = text::trim(lines[i]);
    if (!parse_number(std::string_view(idx), e.index) || e.index <= 0)
      throw ParseError("expected positive subtitle index, got '" + idx + "'", index_line);
    ++i;
    if (i >= lines.size()) throw ParseError("missing timestamp line", index_line + 1);
    const long ts_line = static_cast<long>(i) + 1;
    const auto arrow = lines[i].find("-->");
    if (arrow == std::string::npos)
      throw ParseError("malformed timestamp line '" + lines[i] + "'", ts_line);
    e.start_ms = parse_srt_timestamp(std::string_view(lines[i]).substr(0, arrow), ts_line);
    // Anything after the end stamp (positioning hints) is ignored.
    const auto end_fields = text::split_whitespace(std::string_view(lines[i]).substr(arrow + 3));
    if (end_fields.empty()) throw ParseError("missing end timestamp", ts_line);
    e.end_ms = parse_srt_timestamp(end_fields.front(), ts_line);
    if (e.end_ms <= e.start_ms)
      throw ValidationError("line " + std::to_string(ts_line) +
                            ": subtitle end must be after its start");
    ++i;
    std::vector<std::string> parts;
    while (i < lines.size() && !is_blank(lines[i])) parts.push_back(text::trim(lines[i++]));
    for (std::size_t p = 0; p < parts.size(); ++p) e.text += (p ? " " : "") + parts[p];
    if (!doc.entries.empty() && e.index <= doc.entries.back().index)
      throw ValidationError("line " + std::to_string(index_line) +
                            ": subtitle indices must be strictly increasing (" +
                            std::to_string(doc.entries.back().index) + " then " +
                            std::to_string(e.index) + ")");
    doc.entries.push_back(std::move(e));
  }
  return doc;
}

std::string to_srt(const TranscriptDoc& doc) {
  std::string out;
  for (const auto& e : doc.entries) {
    out += std::to_string(e.index) + "\n" + format_srt_timestamp(e.start_ms) + " --> " +
           format_srt_timestamp(e.end_ms) + "\n" + e.text + "\n\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

SlideDoc parse_slides(std::string_view json_bytes) {
  json j;
  try {
    j = json::parse(json_bytes);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("slide JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("video_id") || !j["video_id"].is_string())
    throw SchemaError("slide JSON: missing string \"video_id\"");
  if (!j.contains("slides") || !j["slides"].is_array())
    throw SchemaError("slide JSON: missing array \"slides\"");
  SlideDoc doc;
  doc.video_id = j["video_id"].get<std::string>();
  for (const auto& s : j["slides"]) {
    if (!s.is_object() || !s.contains("index") || !s["index"].is_number_integer())
      throw SchemaError("slide JSON: slide without integer \"index\"");
    if (!s.contains("lines") || !s["lines"].is_array())
      throw SchemaError("slide JSON: slide " + s["index"].dump() + " missing \"lines\"");
    Slide slide;
    slide.index = s["index"].get<int>();
    if (slide.index <= 0) throw ValidationError("slide index must be positive");
    for (const auto& line : s["lines"]) {
      if (!line.is_string()) throw SchemaError("slide JSON: non-string line");
      slide.lines.push_back(line.get<std::string>());
    }
    if (!doc.slides.empty() && slide.index <= doc.slides.back().index)
      throw ValidationError(slide.index == doc.slides.back().index
                                ? "duplicate slide index " + std::to_string(slide.index)
                                : "slide indices must be strictly increasing");
    doc.slides.push_back(std::move(slide));
  }
  return doc;
}

// ---------------------------------------------------------------------------

namespace {
constexpr std::array<std::string_view, kUposCount> kUposNames = {
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};
}

std::string_view upos_name(Upos tag) { return kUposNames[static_cast<std::size_t>(tag)]; }

std::optional<Upos> parse_upos(std::string_view name) {
  for (std::size_t i = 0; i < kUposCount; ++i)
    if (kUposNames[i] == name) return static_cast<Upos>(i);
  return std::nullopt;
}

const std::array<Upos, kUposCount>& all_upos() {
  static const auto tags = [] {
    std::array<Upos, kUposCount> a{};
    for (std::size_t i = 0; i < kUposCount; ++i) a[i] = static_cast<Upos>(i);
    return a;
  }();
  return tags;
}

std::string_view modality_suffix(Modality m) { return m == Modality::Slide ? "sli" : "tra"; }

AnnotatedDocument parse_annotations(std::string_view conllu_bytes,
                                    std::string_view trees_bytes, Modality modality) {
  AnnotatedDocument doc;
  doc.modality = modality;
  const auto lines = split_lines(conllu_bytes);
  Sentence current;
  auto flush = [&] {
    if (!current.tokens.empty()) doc.sentences.push_back(std::move(current));
    current = Sentence{};
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const long lineno = static_cast<long>(i) + 1;
    const std::string& line = lines[i];
    if (is_blank(line)) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 10)
      throw ParseError("expected 10 tab-separated columns, got " + std::to_string(fields.size()),
                       lineno);
    // Multiword ranges ("1-2") and empty nodes ("1.1") carry no tagged token.
    if (fields[0].find_first_of("-.") != std::string::npos) continue;
    Token tok;
    tok.form = fields[1];
    if (tok.form.empty())
      throw ValidationError("line " + std::to_string(lineno) + ": token without form");
    tok.lemma = fields[2] == "_" ? tok.form : fields[2];
    const auto upos = parse_upos(fields[3]);
    if (!upos)
      throw ValidationError("line " + std::to_string(lineno) + ": unknown UPOS tag '" +
                            fields[3] + "'");
    tok.upos = *upos;
    tok.xpos = fields[4] == "_" ? std::string() : fields[4];
    current.tokens.push_back(std::move(tok));
  }
  flush();

  std::vector<std::string> tree_lines;
  for (auto& l : split_lines(trees_bytes))
    if (!is_blank(l)) tree_lines.push_back(text::trim(l));
  if (tree_lines.size() != doc.sentences.size())
    throw AlignmentError("annotation has " + std::to_string(doc.sentences.size()) +
                         " sentences but trees file has " + std::to_string(tree_lines.size()));
  for (std::size_t s = 0; s < tree_lines.size(); ++s) {
    if (tree_lines[s] == "(NOTREE)") continue;
    ParseTree tree;
    try {
      tree = parse_tree(tree_lines[s]);
    } catch (const ParseError& e) {
      throw ParseError(std::string("tree: ") + e.what(), static_cast<long>(s) + 1);
    }
    if (tree.leaf_count() != doc.sentences[s].tokens.size())
      throw AlignmentError("tree " + std::to_string(s + 1) + " has " +
                           std::to_string(tree.leaf_count()) + " leaves but sentence has " +
                           std::to_string(doc.sentences[s].tokens.size()) + " tokens");
    doc.sentences[s].tree = std::move(tree);
  }
  return doc;
}

std::string to_conllu(const AnnotatedDocument& doc) {
  std::string out;
  for (const auto& s : doc.sentences) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const auto& t = s.tokens[i];
      out += std::to_string(i + 1) + '\t' + t.form + '\t' + t.lemma + '\t' +
             std::string(upos_name(t.upos)) + '\t' + (t.xpos.empty() ? "_" : t.xpos) +
             "\t_\t_\t_\t_\t_\n";
    }
    out += '\n';
  }
  return out;
}

std::string to_trees(const AnnotatedDocument& doc) {
  std::string out;
  for (const auto& s : doc.sentences) out += (s.tree ? to_string(*s.tree) : "(NOTREE)") + "\n";
  return out;
}

// ---------------------------------------------------------------------------

const LexiconEntry* Lexicon::find(std::string_view word) const {
  const auto it = entries.find(text::to_lower(word));
  return it == entries.end() ? nullptr : &it->second;
}

std::optional<double> AoaTable::find(std::string_view word) const {
  const auto it = entries.find(text::to_lower(word));
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

double AoaTable::lookup(std::string_view word) const { return find(word).value_or(default_aoa); }

bool StopwordList::contains(std::string_view w) const {
  return words.count(text::to_lower(w)) > 0;
}

namespace {

// Splits a headed TSV/CSV; returns data rows with their line numbers.
std::vector<std::pair<long, std::vector<std::string>>> read_table(std::string_view bytes,
                                                                  char sep,
                                                                  std::size_t columns,
                                                                  std::string_view what,
                                                                  std::vector<std::string>* header) {
  const auto lines = split_lines(bytes);
  if (lines.empty()) throw SchemaError(std::string(what) + ": missing header row");
  auto head = text::split(lines[0], sep);
  for (auto& h : head) h = text::trim(h);
  if (columns && head.size() != columns)
    throw SchemaError(std::string(what) + ": header must have " + std::to_string(columns) +
                      " columns");
  std::vector<std::pair<long, std::vector<std::string>>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (is_blank(lines[i])) continue;
    auto fields = text::split(lines[i], sep);
    if (fields.size() != head.size())
      throw SchemaError(std::string(what) + ": line " + std::to_string(i + 1) + " has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(head.size()));
    for (auto& f : fields) f = text::trim(f);
    rows.emplace_back(static_cast<long>(i) + 1, std::move(fields));
  }
  if (header) *header = std::move(head);
  return rows;
}

}  // namespace

Lexicon load_lexicon(std::string_view tsv) {
  Lexicon lex;
  for (auto& [line, f] : read_table(tsv, '\t', 4, "lexicon", nullptr)) {
    LexiconEntry e;
    if (!parse_number(std::string_view(f[1]), e.syllables) || e.syllables < 1)
      throw ValidationError("lexicon line " + std::to_string(line) +
                            ": syllables must be a positive integer");
    e.pos = f[2];
    e.frequency = parse_real(f[3], line, "frequency");
    if (e.frequency < 0)
      throw ValidationError("lexicon line " + std::to_string(line) + ": negative frequency");
    const std::string word = text::to_lower(f[0]);
    if (word.empty()) throw SchemaError("lexicon line " + std::to_string(line) + ": empty word");
    if (lex.entries.count(word)) warn("lexicon: duplicate word '" + word + "', last entry wins");
    lex.entries[word] = std::move(e);
  }
  return lex;
}

AoaTable load_aoa(std::string_view tsv) {
  AoaTable t;
  for (auto& [line, f] : read_table(tsv, '\t', 2, "AoA table", nullptr)) {
    const double v = parse_real(f[1], line, "age of acquisition");
    if (!(v > 0)) throw ValidationError("AoA line " + std::to_string(line) + ": must be > 0");
    const std::string word = text::to_lower(f[0]);
    if (t.entries.count(word)) warn("AoA table: duplicate word '" + word + "', last entry wins");
    t.entries[word] = v;
  }
  return t;
}

StopwordList load_stopwords(std::string_view bytes) {
  StopwordList list;
  for (const auto& l : split_lines(bytes)) {
    const std::string w = text::to_lower(text::trim(l));
    if (!w.empty() && w.front() != '#') list.words.insert(w);
  }
  return list;
}

const StopwordList& default_stopwords() {
  static const StopwordList list = load_stopwords(embedded::kStopwords);
  return list;
}

// ---------------------------------------------------------------------------

SentenceEmbeddings load_embeddings(std::string_view jsonl, Modality modality) {
  std::vector<std::vector<double>> rows;
  const auto lines = split_lines(jsonl);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const long lineno = static_cast<long>(i) + 1;
    if (is_blank(lines[i])) continue;
    json j;
    try {
      j = json::parse(lines[i]);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("embeddings: ") + e.what(), lineno);
    }
    if (!j.contains("sentence_index") || !j.contains("vector") || !j["vector"].is_array())
      throw SchemaError("embeddings line " + std::to_string(lineno) +
                        ": need \"sentence_index\" and \"vector\"");
    if (j["sentence_index"].get<long>() != static_cast<long>(rows.size()))
      throw ValidationError("embeddings line " + std::to_string(lineno) +
                            ": sentence_index must be 0-based and ascending");
    auto v = j["vector"].get<std::vector<double>>();
    if (!rows.empty() && v.size() != rows.front().size())
      throw DimensionError("embeddings line " + std::to_string(lineno) + ": dimension " +
                           std::to_string(v.size()) + " differs from " +
                           std::to_string(rows.front().size()));
    rows.push_back(std::move(v));
  }
  SentenceEmbeddings emb;
  emb.modality = modality;
  emb.vectors.resize(static_cast<Eigen::Index>(rows.size()),
                     rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    emb.vectors.row(static_cast<Eigen::Index>(r)) =
        Eigen::Map<const Eigen::RowVectorXd>(rows[r].data(), static_cast<Eigen::Index>(rows[r].size()));
  return emb;
}

std::string to_jsonl(const SentenceEmbeddings& emb) {
  std::string out;
  for (Eigen::Index r = 0; r < emb.vectors.rows(); ++r) {
    json j;
    j["sentence_index"] = r;
    std::vector<double> v(emb.vectors.row(r).begin(), emb.vectors.row(r).end());
    j["vector"] = v;
    out += j.dump() + "\n";
  }
  return out;
}

ExternalFeatureTable load_external_features(std::string_view csv) {
  std::vector<std::string> header;
  auto rows = read_table(csv, ',', 0, "MM table", &header);
  if (header.empty() || header[0] != "video_id")
    throw SchemaError("MM table: first column must be video_id");
  ExternalFeatureTable t;
  t.columns.assign(header.begin() + 1, header.end());
  std::set<std::string> seen;
  for (const auto& c : t.columns)
    if (!seen.insert(c).second) throw SchemaError("MM table: duplicate column '" + c + "'");
  for (auto& [line, f] : rows) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(t.columns.size()));
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      v(static_cast<Eigen::Index>(c)) = parse_real(f[c + 1], line, "MM value");
    if (t.rows.count(f[0])) throw ValidationError("MM table: duplicate video '" + f[0] + "'");
    t.rows.emplace(f[0], std::move(v));
  }
  return t;
}

std::vector<std::string> SessionTable::participants() const {
  std::set<std::string> s;
  for (const auto& x : sessions) s.insert(x.participant_id);
  return {s.begin(), s.end()};
}

std::vector<std::string> SessionTable::videos() const {
  std::set<std::string> s;
  for (const auto& x : sessions) s.insert(x.video_id);
  return {s.begin(), s.end()};
}

SessionTable load_sessions(std::string_view csv) {
  std::vector<std::string> header;
  auto rows = read_table(csv, ',', 3, "sessions", &header);
  if (header != std::vector<std::string>{"participant_id", "video_id", "kg_score"})
    throw SchemaError("sessions: header must be participant_id,video_id,kg_score");
  SessionTable t;
  std::set<std::pair<std::string, std::string>> seen;
  for (auto& [line, f] : rows) {
    if (!seen.emplace(f[0], f[1]).second)
      throw ValidationError("sessions line " + std::to_string(line) + ": duplicate session (" +
                            f[0] + ", " + f[1] + ")");
    t.sessions.push_back({f[0], f[1], parse_real(f[2], line, "kg_score")});
  }
  return t;
}

std::string to_csv(const SessionTable& table) {
  std::string out = "participant_id,video_id,kg_score\n";
  char buf[64];
  for (const auto& s : table.sessions) {
    std::snprintf(buf, sizeof buf, "%.17g", s.kg_score);
    out += s.participant_id + "," + s.video_id + "," + buf + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

LectureBundle assemble_bundle(std::string video_id, TranscriptDoc transcript, SlideDoc slides,
                              AnnotatedDocument ann_slide, AnnotatedDocument ann_transcript,
                              SentenceEmbeddings emb_slide, SentenceEmbeddings emb_transcript,
                              std::optional<Eigen::VectorXd> mm) {
  auto check_id = [&](std::string& id, std::string_view part) {
    if (id.empty())
      id = video_id;
    else if (id != video_id)
      throw ValidationError(std::string(part) + " belongs to video '" + id + "', expected '" +
                            video_id + "'");
  };
  check_id(transcript.video_id, "transcript");
  check_id(slides.video_id, "slides");
  auto check_align = [](const AnnotatedDocument& ann, const SentenceEmbeddings& emb,
                        std::string_view what) {
    if (static_cast<std::size_t>(emb.count()) != ann.sentences.size())
      throw AlignmentError(std::string(what) + ": " + std::to_string(emb.count()) +
                           " embeddings for " + std::to_string(ann.sentences.size()) +
                           " sentences");
  };
  check_align(ann_slide, emb_slide, "slide");
  check_align(ann_transcript, emb_transcript, "transcript");
  if (emb_slide.count() && emb_transcript.count() &&
      emb_slide.dimension() != emb_transcript.dimension())
    throw DimensionError("slide and transcript embeddings differ in dimension");
  ann_slide.modality = emb_slide.modality = Modality::Slide;
  ann_transcript.modality = emb_transcript.modality = Modality::Transcript;
  return LectureBundle{std::move(video_id),       std::move(transcript),
                       std::move(slides),         std::move(ann_slide),
                       std::move(ann_transcript), std::move(emb_slide),
                       std::move(emb_transcript), std::move(mm)};
}

}  // namespace kgp
