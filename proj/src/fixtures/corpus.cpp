#include "kgp/fixtures/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>

#include <json.hpp>

#include "kgp/error.hpp"
#include "kgp/extract.hpp"

namespace kgp::fixtures {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Vocabulary

namespace {

struct Noun {
  const char* sg;
  const char* pl;
};

struct Verb {
  const char* base;
  const char* s3;
  const char* past;
  const char* ppart;
  const char* ing;
  const char* particle;  // phrasal verbs only
};

constexpr std::array<Noun, 18> kNouns = {{{"model", "models"},
                                          {"network", "networks"},
                                          {"student", "students"},
                                          {"lecture", "lectures"},
                                          {"function", "functions"},
                                          {"example", "examples"},
                                          {"algorithm", "algorithms"},
                                          {"computer", "computers"},
                                          {"result", "results"},
                                          {"teacher", "teachers"},
                                          {"graph", "graphs"},
                                          {"idea", "ideas"},
                                          {"university", "universities"},
                                          {"database", "databases"},
                                          {"classroom", "classrooms"},
                                          {"notebook", "notebooks"},
                                          {"gradient", "gradients"},
                                          {"vocabulary", "vocabularies"}}};

constexpr std::array<Verb, 9> kVerbs = {{
    {"explain", "explains", "explained", "explained", "explaining", nullptr},
    {"learn", "learns", "learned", "learned", "learning", nullptr},
    {"build", "builds", "built", "built", "building", nullptr},
    {"compute", "computes", "computed", "computed", "computing", nullptr},
    {"imagine", "imagines", "imagined", "imagined", "imagining", nullptr},
    {"show", "shows", "showed", "shown", "showing", nullptr},
    {"use", "uses", "used", "used", "using", nullptr},
    {"train", "trains", "trained", "trained", "training", nullptr},
    {"set", "sets", "set", "set", "setting", "up"},
}};

constexpr std::array<const char*, 10> kAdjectives = {"big",         "simple",  "important",
                                                     "beautiful",   "complicated", "neural",
                                                     "interesting", "useful",  "well-known",
                                                     "new"};
constexpr std::array<const char*, 3> kAdverbs = {"quickly", "often", "carefully"};
constexpr std::array<const char*, 3> kNames = {"Hannover", "Python", "Turing"};
constexpr std::array<const char*, 4> kNumbers = {"3", "42", "2020", "7"};
constexpr std::array<const char*, 5> kPrepositions = {"in", "of", "with", "for", "about"};

const char* kLexiconRows =
    "word\tsyllables\tpos\tfrequency\n"
    "model\t2\tNN\t120.5\nmodels\t2\tNNS\t60.2\nnetwork\t2\tNN\t80.1\nnetworks\t2\tNNS\t40.0\n"
    "student\t2\tNN\t95.3\nstudents\t2\tNNS\t88.0\nlecture\t2\tNN\t30.7\nlectures\t2\tNNS\t12.4\n"
    "function\t2\tNN\t70.0\nfunctions\t2\tNNS\t33.3\nexample\t3\tNN\t150.2\nexamples\t3\tNNS\t75.9\n"
    "algorithm\t4\tNN\t20.1\nalgorithms\t4\tNNS\t10.0\ncomputer\t3\tNN\t110.0\ncomputers\t3\tNNS\t50.5\n"
    "result\t2\tNN\t140.0\nresults\t2\tNNS\t130.0\nteacher\t2\tNN\t90.0\nteachers\t2\tNNS\t45.0\n"
    "graph\t1\tNN\t15.0\ngraphs\t1\tNNS\t7.5\nidea\t3\tNN\t160.0\nideas\t3\tNNS\t80.0\n"
    "university\t5\tNN\t65.0\nuniversities\t5\tNNS\t12.0\ndatabase\t3\tNN\t25.0\ndatabases\t4\tNNS\t8.0\n"
    "classroom\t2\tNN\t18.0\nclassrooms\t2\tNNS\t4.0\nnotebook\t2\tNN\t9.0\nnotebooks\t2\tNNS\t3.0\n"
    "data\t2\tNN\t200.0\nbase\t1\tNN\t60.0\nclass\t1\tNN\t85.0\nroom\t1\tNN\t99.0\nnote\t1\tNN\t44.0\n"
    "book\t1\tNN\t120.0\ninterest\t3\tNN\t70.0\n"
    "explain\t2\tVB\t40.0\nexplains\t2\tVBZ\t20.0\nexplained\t2\tVBD\t22.0\nexplaining\t3\tVBG\t8.0\n"
    "learn\t1\tVB\t55.0\nlearns\t1\tVBZ\t11.0\nlearned\t1\tVBD\t30.0\nlearning\t2\tVBG\t42.0\n"
    "build\t1\tVB\t50.0\nbuilds\t1\tVBZ\t10.0\nbuilt\t1\tVBD\t35.0\nbuilding\t2\tVBG\t60.0\n"
    "compute\t2\tVB\t12.0\ncomputes\t2\tVBZ\t3.0\ncomputed\t3\tVBD\t5.0\ncomputing\t3\tVBG\t9.0\n"
    "imagine\t3\tVB\t25.0\nimagines\t3\tVBZ\t2.0\nimagined\t3\tVBD\t8.0\nimagining\t4\tVBG\t3.0\n"
    "show\t1\tVB\t100.0\nshows\t1\tVBZ\t40.0\nshowed\t1\tVBD\t30.0\nshown\t1\tVBN\t25.0\nshowing\t2\tVBG\t20.0\n"
    "use\t1\tVB\t300.0\nuses\t2\tVBZ\t60.0\nused\t1\tVBD\t250.0\nusing\t2\tVBG\t150.0\n"
    "train\t1\tVB\t40.0\ntrains\t1\tVBZ\t10.0\ntrained\t1\tVBD\t20.0\ntraining\t2\tVBG\t45.0\n"
    "set\t1\tVB\t200.0\nsets\t1\tVBZ\t30.0\nsetting\t2\tVBG\t40.0\nup\t1\tRP\t900.0\n"
    "is\t1\tVBZ\t9000.0\nare\t1\tVBP\t5000.0\nwas\t1\tVBD\t6000.0\nwere\t1\tVBD\t3000.0\n"
    "be\t1\tVB\t4000.0\nbeen\t1\tVBN\t2500.0\nbeing\t2\tVBG\t800.0\nhas\t1\tVBZ\t3000.0\n"
    "have\t1\tVBP\t4000.0\nhad\t1\tVBD\t2800.0\nwill\t1\tMD\t2000.0\nshall\t1\tMD\t100.0\n"
    "does\t1\tVBZ\t1500.0\ndo\t1\tVBP\t2500.0\n"
    "big\t1\tJJ\t300.0\nsimple\t2\tJJ\t150.0\nimportant\t3\tJJ\t200.0\nbeautiful\t3\tJJ\t90.0\n"
    "complicated\t4\tJJ\t30.0\nneural\t2\tJJ\t10.0\ninteresting\t4\tJJ\t70.0\nuseful\t2\tJJ\t60.0\n"
    "new\t1\tJJ\t900.0\nwell\t1\tRB\t700.0\nknown\t1\tVBN\t200.0\n"
    "quickly\t2\tRB\t50.0\noften\t2\tRB\t120.0\ncarefully\t3\tRB\t30.0\nvery\t2\tRB\t800.0\n"
    "the\t1\tDT\t60000.0\na\t1\tDT\t30000.0\nthis\t1\tDT\t9000.0\nevery\t2\tDT\t1200.0\n"
    "in\t1\tIN\t20000.0\nof\t1\tIN\t35000.0\nwith\t1\tIN\t9000.0\nfor\t1\tIN\t11000.0\n"
    "about\t2\tIN\t5000.0\nby\t1\tIN\t6000.0\nwe\t1\tPRP\t7000.0\nit\t1\tPRP\t15000.0\n"
    "they\t1\tPRP\t6000.0\nand\t1\tCC\t30000.0\nbut\t1\tCC\t5000.0\nthat\t1\tWDT\t14000.0\n"
    "which\t1\tWDT\t4000.0\nwhy\t1\tWRB\t800.0\nhannover\t3\tNNP\t2.0\npython\t2\tNNP\t12.0\n";

const char* kAoaRows =
    "word\taoa\n"
    "model\t8.5\nstudent\t7.2\nteacher\t4.1\ncomputer\t6.0\ngraph\t9.3\nidea\t5.5\nexample\t7.9\n"
    "big\t3.2\nsimple\t5.9\nbeautiful\t5.0\nimportant\t7.7\nnew\t4.0\nlearn\t4.5\nbuild\t4.9\n"
    "show\t4.2\nuse\t5.1\nexplain\t7.3\nimagine\t7.0\nthe\t2.5\na\t2.6\nis\t3.0\nbe\t3.1\n"
    "have\t3.3\nwe\t2.9\nit\t2.8\nand\t3.4\nin\t3.5\nof\t4.4\nquickly\t6.1\nvery\t4.8\n";

}  // namespace

std::string lexicon_tsv() { return kLexiconRows; }
std::string aoa_tsv() { return kAoaRows; }

const Lexicon& fixture_lexicon() {
  static const Lexicon lex = load_lexicon(kLexiconRows);
  return lex;
}

const AoaTable& fixture_aoa() {
  static const AoaTable aoa = load_aoa(kAoaRows);
  return aoa;
}

// ---------------------------------------------------------------------------
// Sentence generator

namespace {

ParseTree node(std::string label, std::vector<ParseTree> children) {
  return ParseTree{std::move(label), std::move(children)};
}

class SentenceBuilder {
 public:
  explicit SentenceBuilder(Rng& rng) : rng_(rng) {}

  ParseTree leaf(std::string form, std::string lemma, Upos upos, std::string xpos) {
    tokens_.push_back({form, std::move(lemma), upos, xpos});
    return node(std::move(xpos), {node(std::move(form), {})});
  }
  ParseTree punct(const std::string& mark, const std::string& xpos) {
    return leaf(mark, mark, Upos::PUNCT, xpos);
  }

  bool chance(double p) { return rng_.uniform() < p; }
  template <typename C>
  auto pick(const C& c) -> decltype(c[0]) {
    return c[rng_.index(c.size())];
  }

  // Noun phrase; sets `plural`.
  ParseTree noun_phrase(bool subject, bool& plural, bool allow_clause = true) {
    const double r = rng_.uniform();
    if (r < 0.12) {
      static constexpr std::array<std::pair<const char*, bool>, 3> kSubj = {
          {{"we", true}, {"they", true}, {"it", false}}};
      const auto& [form, pl] = subject ? kSubj[rng_.index(3)] : kSubj[2];
      plural = pl;
      return node("NP", {leaf(form, form, Upos::PRON, "PRP")});
    }
    if (r < 0.22) {
      plural = false;
      const std::string name = pick(kNames);
      return node("NP", {leaf(name, name, Upos::PROPN, "NNP")});
    }
    if (r < 0.25) {
      plural = false;
      const std::string num = pick(kNumbers);
      return node("NP", {leaf(num, num, Upos::NUM, "CD"), leaf("%", "%", Upos::SYM, "NN")});
    }
    const Noun& n = pick(kNouns);
    if (r < 0.32) {
      plural = true;
      const std::string num = pick(kNumbers);
      ParseTree qp = node("QP", {leaf("about", "about", Upos::ADV, "RB"), leaf(num, num, Upos::NUM, "CD")});
      return node("NP", {std::move(qp), leaf(n.pl, n.sg, Upos::NOUN, "NNS")});
    }
    plural = chance(0.35);
    std::vector<ParseTree> kids;
    if (plural) {
      kids.push_back(leaf("the", "the", Upos::DET, "DT"));
    } else {
      static constexpr std::array<const char*, 4> kDets = {"the", "a", "this", "every"};
      const std::string d = pick(kDets);
      kids.push_back(leaf(d, d, Upos::DET, "DT"));
    }
    if (chance(0.15)) {
      const std::string adj = pick(kAdjectives);
      kids.push_back(node("ADJP", {leaf("very", "very", Upos::ADV, "RB"), leaf(adj, adj, Upos::ADJ, "JJ")}));
    } else if (chance(0.4)) {
      const std::string adj = pick(kAdjectives);
      kids.push_back(leaf(adj, adj, Upos::ADJ, "JJ"));
    }
    kids.push_back(plural ? leaf(n.pl, n.sg, Upos::NOUN, "NNS") : leaf(n.sg, n.sg, Upos::NOUN, "NN"));
    ParseTree np = node("NP", std::move(kids));
    if (allow_clause && chance(0.1)) {
      const Verb& v = pick(kVerbs);
      ParseTree rel = node("SBAR", {node("WHNP", {leaf("that", "that", Upos::PRON, "WDT")}),
                                     node("S", {node("NP", {leaf("we", "we", Upos::PRON, "PRP")}),
                                                node("VP", {leaf(v.base, v.base, Upos::VERB, "VBP")})})});
      np = node("NP", {std::move(np), std::move(rel)});
    }
    return np;
  }

  ParseTree prep_phrase() {
    const std::string p = pick(kPrepositions);
    bool pl = false;
    ParseTree obj = noun_phrase(false, pl, false);
    return node("PP", {leaf(p, p, Upos::ADP, "IN"), std::move(obj)});
  }

  // Verb phrase for a subject of the given number.
  ParseTree verb_phrase(bool plural, bool subordinate = true) {
    const Verb& v = pick(kVerbs);
    const int tense = static_cast<int>(rng_.index(11));
    const bool passive = chance(0.3);

    struct Aux {
      std::string form, lemma, xpos;
    };
    std::vector<Aux> aux;
    const auto be_present = [&] { return Aux{plural ? "are" : "is", "be", plural ? "VBP" : "VBZ"}; };
    const auto be_past = [&] { return Aux{plural ? "were" : "was", "be", "VBD"}; };
    const auto have_present = [&] { return Aux{plural ? "have" : "has", "have", plural ? "VBP" : "VBZ"}; };
    const auto will = [&] {
      if (chance(0.1)) return Aux{"shall", "shall", "MD"};
      return Aux{"will", "will", "MD"};
    };
    // Main-verb form for the active voice.
    std::string main_form, main_xpos;
    switch (tense) {
      case 0:  // present simple
        main_form = plural ? v.base : v.s3;
        main_xpos = plural ? "VBP" : "VBZ";
        break;
      case 1: aux = {be_present()}; main_form = v.ing; main_xpos = "VBG"; break;
      case 2: aux = {have_present()}; main_form = v.ppart; main_xpos = "VBN"; break;
      case 3: aux = {have_present(), {"been", "be", "VBN"}}; main_form = v.ing; main_xpos = "VBG"; break;
      case 4: main_form = v.past; main_xpos = "VBD"; break;
      case 5: aux = {be_past()}; main_form = v.ing; main_xpos = "VBG"; break;
      case 6: aux = {{"had", "have", "VBD"}}; main_form = v.ppart; main_xpos = "VBN"; break;
      case 7: aux = {{"had", "have", "VBD"}, {"been", "be", "VBN"}}; main_form = v.ing; main_xpos = "VBG"; break;
      case 8: aux = {will()}; main_form = v.base; main_xpos = "VB"; break;
      case 9: aux = {will(), {"be", "be", "VB"}}; main_form = v.ing; main_xpos = "VBG"; break;
      default: aux = {will(), {"have", "have", "VB"}}; main_form = v.ppart; main_xpos = "VBN"; break;
    }
    if (passive) {
      // Replace the main verb by the matching form of "be" and add the participle.
      if (tense == 0) aux = {be_present()};
      else if (tense == 4) aux = {be_past()};
      else if (tense == 8) aux.push_back({"be", "be", "VB"});
      else if (tense == 2 || tense == 6 || tense == 10) aux.push_back({"been", "be", "VBN"});
      else aux.push_back({"being", "be", "VBG"});
      main_form = v.ppart;
      main_xpos = "VBN";
    }

    std::vector<ParseTree> aux_leaves;
    std::optional<ParseTree> negation;
    for (const auto& a : aux) {
      aux_leaves.push_back(leaf(a.form, a.lemma, Upos::AUX, a.xpos));
      if (aux_leaves.size() == 1 && chance(0.1)) negation = leaf("not", "not", Upos::PART, "RB");
    }
    std::vector<ParseTree> inner;
    inner.push_back(leaf(main_form, v.base, Upos::VERB, main_xpos));
    if (v.particle) inner.push_back(node("PRT", {leaf(v.particle, v.particle, Upos::ADP, "RP")}));
    if (!passive && chance(0.7)) {
      bool pl = false;
      inner.push_back(noun_phrase(false, pl));
    }
    if (passive && chance(0.5)) {
      bool pl = false;
      ParseTree by = leaf("by", "by", Upos::ADP, "IN");
      ParseTree agent = noun_phrase(false, pl, false);
      inner.push_back(node("PP", {std::move(by), std::move(agent)}));
    } else if (chance(0.35)) {
      inner.push_back(prep_phrase());
    }
    if (chance(0.2)) {
      const std::string adv = pick(kAdverbs);
      inner.push_back(node("ADVP", {leaf(adv, adv, Upos::ADV, "RB")}));
    } else if (chance(0.05)) {
      inner.push_back(node("ADVP", {leaf("etc", "etc", Upos::X, "FW")}));
    }
    if (subordinate && chance(0.08)) {
      ParseTree because = leaf("because", "because", Upos::SCONJ, "IN");
      bool pl = false;
      ParseTree subject = noun_phrase(true, pl, false);
      const Verb& w = pick(kVerbs);
      ParseTree verb = pl ? leaf(w.base, w.base, Upos::VERB, "VBP") : leaf(w.s3, w.base, Upos::VERB, "VBZ");
      inner.push_back(node("SBAR", {std::move(because),
                                     node("S", {std::move(subject), node("VP", {std::move(verb)})})}));
    }
    ParseTree vp = node("VP", std::move(inner));
    for (std::size_t i = aux_leaves.size(); i-- > 0;) {
      std::vector<ParseTree> kids;
      kids.push_back(std::move(aux_leaves[i]));
      if (i == 0 && negation) kids.push_back(std::move(*negation));
      kids.push_back(std::move(vp));
      vp = node("VP", std::move(kids));
    }
    return vp;
  }

  ParseTree clause() {
    bool plural = false;
    ParseTree subject = noun_phrase(true, plural);
    ParseTree vp = verb_phrase(plural);
    return node("S", {std::move(subject), std::move(vp)});
  }

  ParseTree question() {
    bool plural = false;
    if (chance(0.5)) {
      ParseTree verb = leaf("is", "be", Upos::AUX, "VBZ");  // fixed up below for plurals
      const std::size_t verb_at = tokens_.size() - 1;
      ParseTree subject = noun_phrase(false, plural, false);
      if (plural) {
        tokens_[verb_at].form = "are";
        tokens_[verb_at].xpos = "VBP";
        verb = node("VBP", {node("are", {})});
      }
      const std::string adj = pick(kAdjectives);
      ParseTree pred = node("ADJP", {leaf(adj, adj, Upos::ADJ, "JJ")});
      ParseTree mark = punct("?", ".");
      return node("SQ", {std::move(verb), std::move(subject), std::move(pred), std::move(mark)});
    }
    ParseTree wh;
    if (chance(0.3)) {
      ParseTree in = leaf("in", "in", Upos::ADP, "IN");
      ParseTree which = leaf("which", "which", Upos::DET, "WDT");
      ParseTree noun = leaf("lecture", "lecture", Upos::NOUN, "NN");
      wh = node("WHPP", {std::move(in), node("WHNP", {std::move(which), std::move(noun)})});
    } else {
      wh = node("WHADVP", {leaf("why", "why", Upos::ADV, "WRB")});
    }
    ParseTree aux = leaf("does", "do", Upos::AUX, "VBZ");
    const std::size_t aux_at = tokens_.size() - 1;
    ParseTree subject = noun_phrase(false, plural, false);
    if (plural) {
      tokens_[aux_at].form = "do";
      tokens_[aux_at].xpos = "VBP";
      aux = node("VBP", {node("do", {})});
    }
    const Verb& v = pick(kVerbs);
    std::vector<ParseTree> vp_kids;
    vp_kids.push_back(leaf(v.base, v.base, Upos::VERB, "VB"));
    if (v.particle) vp_kids.push_back(node("PRT", {leaf(v.particle, v.particle, Upos::ADP, "RP")}));
    ParseTree sq = node("SQ", {std::move(aux), std::move(subject), node("VP", std::move(vp_kids))});
    ParseTree mark = punct("?", ".");
    return node("SBARQ", {std::move(wh), std::move(sq), std::move(mark)});
  }

  ParseTree sentence(bool allow_question) {
    if (allow_question && chance(0.15)) return question();
    std::vector<ParseTree> kids;
    if (chance(0.08)) {
      kids.push_back(node("INTJ", {leaf("well", "well", Upos::INTJ, "UH")}));
      kids.push_back(punct(",", ","));
    }
    const double r = rng_.uniform();
    if (r < 0.2) {
      kids.push_back(clause());
      kids.push_back(punct(",", ","));
      const std::string cc = chance(0.5) ? "and" : "but";
      kids.push_back(leaf(cc, cc, Upos::CCONJ, "CC"));
      kids.push_back(clause());
    } else if (r < 0.27) {
      kids.push_back(clause());
      kids.push_back(punct(";", ":"));
      kids.push_back(clause());
    } else {
      ParseTree s = clause();
      for (auto& c : s.children) kids.push_back(std::move(c));
    }
    kids.push_back(punct(".", "."));
    return node("S", std::move(kids));
  }

  std::vector<Token> tokens_;

 private:
  Rng& rng_;
};

}  // namespace

Sentence random_sentence(Rng& rng, bool allow_question) {
  SentenceBuilder b(rng);
  ParseTree tree = b.sentence(allow_question);
  Sentence s;
  s.tokens = std::move(b.tokens_);
  // Sentence-initial capital.
  auto& first = s.tokens.front().form;
  first[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(first[0])));
  ParseTree* leaf = &tree;
  while (!leaf->is_leaf()) leaf = &leaf->children.front();
  leaf->label = first;
  s.tree = std::move(tree);
  return s;
}

AnnotatedDocument random_document(Rng& rng, Modality modality, int sentences) {
  AnnotatedDocument doc;
  doc.modality = modality;
  for (int i = 0; i < sentences; ++i) doc.sentences.push_back(random_sentence(rng));
  return doc;
}

namespace {

std::string sentence_text(const Sentence& s) {
  std::string out;
  for (const auto& t : s.tokens) {
    const bool attach = t.upos == Upos::PUNCT && !out.empty();
    if (!out.empty() && !attach) out += ' ';
    out += t.form;
  }
  return out;
}

SentenceEmbeddings random_embeddings(Rng& rng, Modality m, std::size_t n, const Eigen::VectorXd& topic) {
  SentenceEmbeddings e;
  e.modality = m;
  e.vectors.resize(static_cast<Eigen::Index>(n), topic.size());
  for (std::size_t r = 0; r < n; ++r) {
    Eigen::VectorXd v(topic.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = rng.normal();
    v = topic + 0.7 * v.normalized();
    e.vectors.row(static_cast<Eigen::Index>(r)) = v.normalized().transpose();
  }
  return e;
}

}  // namespace

LectureBundle random_lecture(Rng& rng, const std::string& video_id, int slide_sentences,
                             int transcript_sentences, Eigen::Index embedding_dim) {
  AnnotatedDocument ann_slide = random_document(rng, Modality::Slide, slide_sentences);
  AnnotatedDocument ann_tra = random_document(rng, Modality::Transcript, transcript_sentences);

  SlideDoc slides;
  slides.video_id = video_id;
  for (std::size_t i = 0; i < ann_slide.sentences.size();) {
    Slide slide;
    slide.index = static_cast<int>(slides.slides.size()) + 1;
    const std::size_t lines = 1 + rng.index(3);
    for (std::size_t k = 0; k < lines && i < ann_slide.sentences.size(); ++k, ++i)
      slide.lines.push_back(sentence_text(ann_slide.sentences[i]));
    slides.slides.push_back(std::move(slide));
  }

  TranscriptDoc transcript;
  transcript.video_id = video_id;
  long clock = static_cast<long>(rng.index(2000));
  auto add_cue = [&](const std::string& text, std::size_t words) {
    SubtitleEntry e;
    e.index = static_cast<int>(transcript.entries.size()) + 1;
    e.start_ms = clock;
    e.end_ms = clock + static_cast<long>(static_cast<double>(words) * rng.uniform(200.0, 500.0)) + 300;
    e.text = text;
    clock = e.end_ms + static_cast<long>(rng.index(400));
    transcript.entries.push_back(std::move(e));
  };
  for (const auto& s : ann_tra.sentences) {
    const auto& toks = s.tokens;
    if (toks.size() > 6 && rng.uniform() < 0.4) {
      const std::size_t cut = toks.size() / 2;
      Sentence a, b;
      a.tokens.assign(toks.begin(), toks.begin() + static_cast<long>(cut));
      b.tokens.assign(toks.begin() + static_cast<long>(cut), toks.end());
      add_cue(sentence_text(a), cut);
      add_cue(sentence_text(b), toks.size() - cut);
    } else {
      add_cue(sentence_text(s), toks.size());
    }
  }

  Eigen::VectorXd topic(embedding_dim);
  for (Eigen::Index k = 0; k < embedding_dim; ++k) topic(k) = rng.normal();
  topic.normalize();
  SentenceEmbeddings emb_slide = random_embeddings(rng, Modality::Slide, ann_slide.sentences.size(), topic);
  SentenceEmbeddings emb_tra = random_embeddings(rng, Modality::Transcript, ann_tra.sentences.size(), topic);
  return assemble_bundle(video_id, std::move(transcript), std::move(slides), std::move(ann_slide),
                         std::move(ann_tra), std::move(emb_slide), std::move(emb_tra), std::nullopt);
}

LectureBundle random_tiny_bundle(std::uint64_t seed) {
  Rng rng(seed);
  const int ns = 1 + static_cast<int>(rng.index(3));
  const int nt = 1 + static_cast<int>(rng.index(3));
  return random_lecture(rng, "tiny", ns, nt, 4);
}

// ---------------------------------------------------------------------------
// Corpus

SyntheticCorpus generate(const SyntheticCorpusSpec& spec) {
  if (spec.n_videos < 1 || spec.n_participants < 1) throw ValidationError("corpus needs videos and participants");
  Rng rng(spec.seed);
  SyntheticCorpus c;
  for (int v = 0; v < spec.n_videos; ++v) {
    char id[32];
    std::snprintf(id, sizeof id, "v%03d", v + 1);
    auto draw = [&](int n) {
      const int lo = std::max(1, n / 2);
      return lo + static_cast<int>(rng.index(static_cast<std::size_t>(std::max(1, n - lo + 1))));
    };
    const int ns = draw(spec.slide_sentences);
    const int nt = draw(spec.transcript_sentences);
    c.lectures.push_back(random_lecture(rng, id, ns, nt, spec.embedding_dim));
  }

  // Per-video signal in standard units.
  std::vector<double> signal(c.lectures.size());
  if (spec.planted_feature) {
    Resources res;
    res.lexicon = fixture_lexicon();
    res.aoa = fixture_aoa();
    for (std::size_t i = 0; i < c.lectures.size(); ++i)
      signal[i] = extract_features(c.lectures[i], res)[*spec.planted_feature];
    double mean = 0, var = 0;
    for (double x : signal) mean += x / static_cast<double>(signal.size());
    for (double x : signal) var += (x - mean) * (x - mean) / static_cast<double>(signal.size());
    const double sd = std::sqrt(var);
    for (double& x : signal) x = sd > 0 ? (x - mean) / sd : 0.0;
  } else {
    for (double& x : signal) x = rng.normal();
  }

  std::vector<double> person(static_cast<std::size_t>(spec.n_participants));
  for (double& p : person) p = 0.3 * rng.normal();
  for (int p = 0; p < spec.n_participants; ++p) {
    char pid[32];
    std::snprintf(pid, sizeof pid, "p%02d", p + 1);
    for (std::size_t v = 0; v < c.lectures.size(); ++v) {
      const double z = signal[v] + person[static_cast<std::size_t>(p)] + spec.noise * rng.normal();
      const double score = std::round((5.0 + 2.0 * z) * 1000.0) / 1000.0;
      c.sessions.sessions.push_back({pid, c.lectures[v].video_id, score});
    }
  }

  if (spec.mm_columns > 0) {
    ExternalFeatureTable mm;
    for (int k = 0; k < spec.mm_columns; ++k) mm.columns.push_back("mm_feature_" + std::to_string(k));
    for (const auto& l : c.lectures) {
      Eigen::VectorXd row(spec.mm_columns);
      for (Eigen::Index k = 0; k < row.size(); ++k) row(k) = std::round(rng.normal() * 1e4) / 1e4;
      mm.rows[l.video_id] = row;
    }
    for (auto& l : c.lectures) l.mm = mm.rows.at(l.video_id);
    c.mm = std::move(mm);
  }
  return c;
}

std::string slides_json(const SlideDoc& slides) {
  nlohmann::json j;
  j["video_id"] = slides.video_id;
  j["slides"] = nlohmann::json::array();
  for (const auto& s : slides.slides) j["slides"].push_back({{"index", s.index}, {"lines", s.lines}});
  return j.dump(2) + "\n";
}

std::string mm_csv(const ExternalFeatureTable& mm) {
  std::string out = "video_id";
  for (const auto& c : mm.columns) out += "," + c;
  out += "\n";
  for (const auto& [id, row] : mm.rows) {
    out += id;
    for (Eigen::Index k = 0; k < row.size(); ++k) {
      char buf[64];
      std::snprintf(buf, sizeof buf, ",%.17g", row(k));
      out += buf;
    }
    out += "\n";
  }
  return out;
}

void write_corpus(const SyntheticCorpus& corpus, const fs::path& root) {
  fs::create_directories(root);
  write_file(root / "lexicon.tsv", lexicon_tsv());
  write_file(root / "aoa.tsv", aoa_tsv());
  write_file(root / "sessions.csv", to_csv(corpus.sessions));
  if (corpus.mm) write_file(root / "mm.csv", mm_csv(*corpus.mm));
  for (const auto& l : corpus.lectures) {
    const fs::path dir = root / l.video_id;
    write_file(dir / "transcript.srt", to_srt(l.transcript));
    write_file(dir / "slides.json", slides_json(l.slides));
    write_file(dir / "slide.conllu", to_conllu(l.ann_slide));
    write_file(dir / "slide.trees", to_trees(l.ann_slide));
    write_file(dir / "transcript.conllu", to_conllu(l.ann_transcript));
    write_file(dir / "transcript.trees", to_trees(l.ann_transcript));
    write_file(dir / "emb_slide.jsonl", to_jsonl(l.emb_slide));
    write_file(dir / "emb_srt.jsonl", to_jsonl(l.emb_transcript));
  }
}

// ---------------------------------------------------------------------------
// Matrix fixtures

Dataset separable_blobs(std::uint64_t seed, int n, int features, double spread) {
  Rng rng(seed);
  Eigen::MatrixXd centres(3, features);
  for (Eigen::Index c = 0; c < 3; ++c)
    for (Eigen::Index f = 0; f < features; ++f) centres(c, f) = rng.uniform(-1.0, 1.0);
  // Push the centres apart along the first two axes.
  centres(0, 0) -= 4;
  centres(1, 0) += 4;
  if (features > 1) centres(2, 1) += 6;
  Eigen::MatrixXd x(n, features);
  std::vector<KgClass> y;
  for (int r = 0; r < n; ++r) {
    const int c = r % 3;
    for (Eigen::Index f = 0; f < features; ++f) x(r, f) = centres(c, f) + spread * rng.normal();
    y.push_back(static_cast<KgClass>(c));
  }
  return dataset_from_matrix(x, std::move(y));
}

Dataset planted_signal(std::uint64_t seed, int n, int noise_features, double label_noise) {
  Rng rng(seed);
  Eigen::MatrixXd x(n, 1 + noise_features);
  std::vector<double> score(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    x(r, 0) = rng.normal();
    score[static_cast<std::size_t>(r)] = x(r, 0) + label_noise * rng.normal();
    for (int f = 0; f < noise_features; ++f) x(r, 1 + f) = rng.normal();
  }
  Dataset ds = dataset_from_matrix(x, zscore_labels(score));
  ds.columns[0].name = "signal";
  for (int f = 0; f < noise_features; ++f) ds.columns[static_cast<std::size_t>(1 + f)].name = "noise" + std::to_string(f);
  return ds;
}

}  // namespace kgp::fixtures
