#include "htparse/treebank_gen.hpp"

#include <algorithm>
#include <random>

namespace htparse {

namespace {

// ~200 forms across 12 POS tags.  Noun/verb/preposition classes drive the
// grammar's attachment decisions so the corpus is learnable but not trivial.
const std::vector<std::string> kNounsThing = {
    "box",  "crate", "table",  "ladder", "bottle", "wheel",  "basket", "hammer",
    "rope", "lamp",  "mirror", "shelf",  "bucket", "window", "door",   "engine",
    "sack", "stove", "anchor", "barrel"};
const std::vector<std::string> kNounsAgent = {
    "farmer", "sailor",  "teacher", "doctor", "painter", "baker",  "miner",
    "singer", "tailor",  "hunter",  "clerk",  "guard",   "pilot",  "smith",
    "nurse",  "butcher", "weaver",  "scout",  "porter",  "fisher"};
const std::vector<std::string> kVerbsPlace = {
    "placed", "dropped", "lifted", "carried", "pushed", "pulled",
    "rolled", "stacked", "tossed", "dragged", "loaded", "shoved"};
const std::vector<std::string> kVerbsSee = {
    "saw",     "noticed", "watched", "studied",  "sketched", "counted",
    "praised", "ignored", "greeted", "followed", "trusted",  "described"};
const std::vector<std::string> kAdjsSize = {"big",   "small", "heavy", "light",
                                            "tall",  "short", "wide",  "narrow",
                                            "thick", "thin",  "round", "flat"};
const std::vector<std::string> kAdjsHue = {"red",    "blue",  "green", "grey",
                                           "black",  "white", "brown", "pale",
                                           "bright", "dark",  "dusty", "shiny"};
// determiner classes: kDetsNest trigger nested prepositional attachment on
// the noun chain, kDetsFlat send every following phrase up to the verb
const std::vector<std::string> kDetsNest = {"the", "this", "each", "one"};
const std::vector<std::string> kDetsFlat = {"a", "that", "some", "every"};
// verb-attaching vs noun-attaching prepositions
const std::vector<std::string> kPrepsVerb = {"during", "despite", "before",
                                             "after"};
const std::vector<std::string> kPrepsNoun = {"of", "from", "near", "beside"};
const std::vector<std::string> kAdvs = {"quickly", "slowly",   "quietly",
                                        "loudly",  "often",    "rarely",
                                        "gently",  "suddenly", "calmly",
                                        "eagerly", "barely",   "almost"};
const std::vector<std::string> kNames = {
    "alma",  "boris", "clara", "dmitri", "elena", "felix", "greta", "hugo",
    "irene", "jonas", "karin", "lars",   "mira",  "nils",  "olga",  "pavel"};
const std::vector<std::string> kPronouns = {"he", "she", "they", "it",
                                            "we", "you"};
const std::vector<std::string> kNums = {"two", "three", "four",
                                        "five", "six",  "seven"};
const std::vector<std::string> kConj = {"and"};
const std::vector<std::string> kPart = {"not"};
const std::vector<std::string> kTimes = {"yesterday", "today", "tonight",
                                         "tomorrow"};

struct Builder {
  std::vector<Token> tokens;
  std::vector<Arc> arcs;
  std::mt19937_64 rng;

  explicit Builder(std::uint64_t s) : rng(s) {}

  int emit(const std::string& form, const std::string& pos) {
    Token t;
    t.index = static_cast<int>(tokens.size()) + 1;
    t.form = form;
    t.pos = pos;
    tokens.push_back(t);
    return t.index;
  }
  void arc(int head, int mod, const std::string& label) {
    arcs.push_back(Arc{head, mod, label});
  }

  const std::string& pick(const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  }
  bool coin(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
  }

  // NP: DET (NUM) (ADJ)* NOUN, or a bare name/pronoun — returns the noun
  // index; *nested (if given) reports whether the determiner is nest-class.
  int np(bool agent, bool allow_mods = true, bool* nested = nullptr) {
    if (nested) *nested = false;
    if (coin(0.15)) {
      return emit(pick(agent ? kNames : kPronouns), agent ? "PROPN" : "PRON");
    }
    const bool nest = coin(0.5);
    if (nested) *nested = nest;
    int det = emit(pick(nest ? kDetsNest : kDetsFlat), "DET");
    int num = 0;
    if (allow_mods && coin(0.2)) num = emit(pick(kNums), "NUM");
    std::vector<int> adjs;
    if (allow_mods) {
      if (coin(0.5)) adjs.push_back(emit(pick(kAdjsSize), "ADJ"));
      if (coin(0.35)) adjs.push_back(emit(pick(kAdjsHue), "ADJ"));
    }
    int noun = emit(pick(agent ? kNounsAgent : kNounsThing), "NOUN");
    arc(noun, det, "det");
    if (num) arc(noun, num, "num");
    for (int a : adjs) arc(noun, a, "amod");
    if (allow_mods && coin(0.12)) {
      int cc = emit(pick(kConj), "CONJ");
      int noun2 = emit(pick(agent ? kNounsAgent : kNounsThing), "NOUN");
      arc(noun, cc, "cc");
      arc(noun, noun2, "conj");
    }
    return noun;
  }

  // PP headed by the preposition; the object NP hangs off it.  Returns the
  // preposition index; *pobj_noun its object noun.
  int pp(int* pobj_noun) {
    int prep = emit(pick(coin(0.5) ? kPrepsNoun : kPrepsVerb), "PREP");
    int obj = np(/*agent=*/coin(0.3), /*allow_mods=*/false);
    arc(prep, obj, "pobj");
    if (pobj_noun) *pobj_noun = obj;
    return prep;
  }

  Sentence sentence() {
    tokens.clear();
    arcs.clear();

    int subj = np(/*agent=*/true);
    int neg = 0;
    if (coin(0.15)) neg = emit(pick(kPart), "PART");
    int adv = 0;
    if (coin(0.4)) adv = emit(pick(kAdvs), "ADV");
    const bool place = coin(0.5);
    int verb = emit(pick(place ? kVerbsPlace : kVerbsSee), "VERB");
    arc(verb, subj, "nsubj");
    if (neg) arc(verb, neg, "advmod");
    if (adv) arc(verb, adv, "advmod");

    bool nested = false;
    int obj = np(/*agent=*/coin(0.25), /*allow_mods=*/true, &nested);
    arc(verb, obj, "dobj");

    // Prepositional-phrase attachment is decided by the object's
    // determiner class, which is absorbed into the object subtree long
    // before the attachment is scored: nest-class objects grow a chain
    // (each phrase modifies the previous noun), flat-class objects send
    // every phrase up to the verb.  The trailing time noun follows the
    // same split.  Surface strings are identical across the two regimes.
    const int n_pps = coin(0.85) ? (coin(0.45) ? 2 : 1) : 0;
    int chain_noun = obj;
    for (int i = 0; i < n_pps; ++i) {
      int pobj_noun = 0;
      int prep = pp(&pobj_noun);
      if (nested) {
        arc(chain_noun, prep, "prep");
        chain_noun = pobj_noun;
      } else {
        arc(verb, prep, "prep");
      }
    }
    if (coin(0.6)) {
      int t = emit(pick(kTimes), "NOUN");
      arc(nested ? obj : verb, t, nested ? "nmod" : "advmod");
    }

    Sentence s;
    s.tokens = tokens;
    // root is the verb
    std::vector<Arc> all = arcs;
    all.push_back(Arc{0, verb, "root"});
    std::sort(all.begin(), all.end(),
              [](const Arc& a, const Arc& b) { return a.modifier < b.modifier; });
    s.gold_arcs = std::move(all);
    return s;
  }
};

}  // namespace

std::vector<Sentence> generate_treebank(std::uint64_t seed, std::size_t count) {
  Builder b(seed * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL);
  std::vector<Sentence> out;
  out.reserve(count);
  while (out.size() < count) {
    Sentence s = b.sentence();
    check_tree(s);
    if (!is_projective(s)) continue;  // grammar is projective by construction
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace htparse
