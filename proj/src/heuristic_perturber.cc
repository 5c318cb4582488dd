//
// Copyright 2026 The PerturbKit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "perturbkit/heuristic_perturber.h"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "absl/strings/str_cat.h"
#include "perturbkit/candidates.h"
#include "perturbkit/rng.h"
#include "perturbkit/string_util.h"

namespace perturbkit {
namespace {

using WordSet = std::unordered_set<std::string_view>;

// Tokens after which a possessive reading is impossible.
const WordSet& NonNounWords() {
  static const WordSet* words = new WordSet{
      // determiners and pronouns
      "a", "an", "the", "this", "that", "these", "those", "some", "any",
      "every", "each", "no", "another", "my", "your", "our", "their", "his",
      "her", "its", "i", "you", "he", "she", "it", "we", "they", "me", "him",
      "us", "them", "myself", "yourself", "himself", "herself", "itself",
      "ourselves", "themselves", "who", "whom", "which", "what", "where",
      "why", "how",
      // prepositions and particles
      "to", "of", "in", "on", "at", "for", "with", "from", "by", "about",
      "into", "onto", "over", "after", "before", "under", "up", "down", "out",
      "off", "through", "across", "around", "as", "than", "toward", "towards",
      "upon", "back", "away", "along", "behind", "beside", "between",
      "without", "within", "during", "against", "near",
      // conjunctions
      "and", "or", "but", "because", "if", "when", "while", "although",
      "though", "since", "until", "unless", "whether", "nor", "yet", "then",
      // auxiliaries
      "is", "are", "was", "were", "be", "been", "being", "am", "has", "have",
      "had", "do", "does", "did", "will", "would", "can", "could", "shall",
      "should", "may", "might", "must",
      // common verbs
      "go", "went", "get", "got", "know", "knew", "see", "saw", "say", "said",
      "tell", "told", "think", "thought", "feel", "felt", "want", "wanted",
      "like", "liked", "love", "loved", "need", "needed", "make", "made",
      "take", "took", "give", "gave", "come", "came", "look", "looked",
      "find", "found", "help", "helped", "let", "ask", "asked", "call",
      "called", "try", "tried", "leave", "left", "keep", "kept", "meet", "met",
      "stay", "stayed", "bring", "brought", "hear", "heard", "understand",
      "believe", "remember", "thank", "thanked", "hug", "hugged", "kiss",
      "kissed", "said", "seem", "seemed", "became", "become", "laughed",
      "smiled", "replied", "answered", "cried", "lamented", "agreed",
      // adverbs
      "not", "never", "always", "just", "also", "too", "again", "now", "here",
      "there", "today", "tonight", "yesterday", "tomorrow", "well", "much",
      "more", "less", "still", "already", "ever", "even", "soon", "later",
      "enough", "anyway", "alone", "together", "directly", "immediately",
      "often", "sometimes", "usually", "really", "once", "twice", "instead",
      "either", "neither", "else", "very", "so", "quite", "most",
      // contraction pieces
      "s", "t", "ll", "re", "ve", "d", "m"};
  return *words;
}

const WordSet& IngNouns() {
  static const WordSet* words = new WordSet{
      "wedding", "morning", "evening", "building", "ring", "king", "thing",
      "clothing", "feeling", "painting", "drawing", "earring", "earrings",
      "sibling", "siblings", "darling", "offspring", "ceiling", "meeting",
      "outing", "upbringing", "writing", "singing", "cooking", "dancing",
      "training", "wing", "string", "stocking", "stockings", "pudding",
      "belongings", "savings", "feelings", "things", "offering", "engagement"};
  return *words;
}

const WordSet& LyAdjectives() {
  static const WordSet* words = new WordSet{
      "lovely", "friendly", "lonely", "elderly", "early", "ugly", "silly",
      "holy", "daily", "weekly", "monthly", "yearly", "family", "ally",
      "belly", "bully", "jelly", "rally", "folly", "only", "lively",
      "curly", "costly", "deadly", "likely", "orderly", "scholarly", "wily",
      "homely", "kindly", "lowly", "manly", "motherly", "fatherly",
      "sisterly", "brotherly", "womanly", "beastly", "burly", "chilly",
      "comely", "cuddly", "worldly"};
  return *words;
}

const WordSet& Intensifiers() {
  static const WordSet* words =
      new WordSet{"very", "most", "really", "so", "quite", "too", "rather"};
  return *words;
}

const WordSet& ColorGuardNouns() {
  static const WordSet* words = new WordSet{
      "pawn", "bishop", "knight", "rook", "piece", "square", "shirt",
      "dress", "hat", "coat", "jacket", "shoe", "boot", "sock", "belt", "tie",
      "suit", "pant", "jean", "glove", "scarf", "sweater", "car", "truck",
      "van", "house", "wine", "paint", "board", "cat", "dog", "horse", "swan",
      "sheep", "snow", "coffee", "tea", "paper", "hole", "ink", "smoke",
      "bag", "box", "door", "wall", "fence", "flag", "cloth", "fabric",
      "dot", "line", "stripe", "ball", "sand", "light", "screen", "key",
      "tile", "marble", "pepper", "bread", "rice", "bean", "cloud", "powder",
      "chocolate", "water", "rose", "flower", "stone", "background", "noise",
      "belt", "ribbon", "label", "sugar", "hair", "beard", "fur", "feather",
      "wood", "metal", "plastic", "gold", "sky", "pearl", "ice", "smoke",
      "walls", "chalk", "sneaker", "uniform", "gown", "collar", "cap", "lace",
      "font", "text", "space", "magic", "market", "hole", "widow", "tux",
      "dwarf", "blood", "cell", "sauce", "meat", "pudding", "chip", "bear",
      "wolf", "rhino", "eye", "tiger", "lion", "lab", "spider", "cabinet",
      "leather", "mold", "mould", "death", "friday", "board", "out", "list"};
  return *words;
}

const WordSet& AgreementAdverbs() {
  static const WordSet* words = new WordSet{
      "already", "also", "always", "never", "often", "still", "just",
      "really", "usually", "sometimes", "even", "only", "then", "now",
      "probably", "certainly", "actually", "finally", "clearly", "rarely",
      "seldom", "generally", "typically", "truly", "definitely", "obviously",
      "apparently", "simply", "mostly", "barely", "hardly", "nearly",
      "almost", "soon", "recently", "later", "currently", "suddenly",
      "quickly", "slowly", "immediately", "sometimes", "frequently",
      "occasionally", "constantly", "merely", "surely", "basically"};
  return *words;
}

// Words ending in "s" that are not third-person verbs.
const WordSet& NonVerbS() {
  static const WordSet* words = new WordSet{
      "always", "sometimes", "perhaps", "afterwards", "besides", "towards",
      "whereas", "nevertheless", "thus", "yes", "less", "unless", "its",
      "his", "hers", "ours", "yours", "theirs", "this", "us", "as", "plus",
      "bus", "gas", "news", "series", "species", "upstairs", "downstairs",
      "indoors", "outdoors", "overseas", "nowadays", "sideways", "anyways",
      "was", "is", "has", "does", "ones", "themselves", "yourselves",
      "ourselves", "whereas", "across"};
  return *words;
}

const std::unordered_map<std::string_view, std::string_view>& ToTheyVerbs() {
  static const auto* map =
      new std::unordered_map<std::string_view, std::string_view>{
          {"is", "are"},     {"was", "were"},     {"has", "have"},
          {"does", "do"},    {"isn", "aren"},     {"wasn", "weren"},
          {"hasn", "haven"}, {"doesn", "don"}};
  return *map;
}

const std::unordered_map<std::string_view, std::string_view>& FromTheyVerbs() {
  static const auto* map =
      new std::unordered_map<std::string_view, std::string_view>{
          {"are", "is"},     {"were", "was"},      {"have", "has"},
          {"do", "does"},    {"aren", "isn"},      {"weren", "wasn"},
          {"haven", "hasn"}, {"don", "doesn"}};
  return *map;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool IsPunctuation(std::string_view token) {
  for (char c : token) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) return false;
  }
  return true;
}

bool IsOpeningQuote(std::string_view token) {
  return token == "\"" || token == "'" || token == "“" || token == "‘" ||
         token == "(" || token == "[" || token == "`";
}

// "likes" -> "like", "tries" -> "try", "watches" -> "watch". Returns the
// input when it does not look like a third-person singular verb.
std::string StripThirdPerson(const std::string& word) {
  if (word.size() < 3 || word.back() != 's' || NonVerbS().count(word) ||
      EndsWith(word, "ss") || EndsWith(word, "us") || EndsWith(word, "is") ||
      EndsWith(word, "ous")) {
    return word;
  }
  if (EndsWith(word, "ies")) {
    return word.size() > 4 ? word.substr(0, word.size() - 3) + "y"
                           : word.substr(0, word.size() - 1);
  }
  for (std::string_view suffix :
       {"ches", "shes", "sses", "xes", "zzes", "oes"}) {
    if (EndsWith(word, suffix)) return word.substr(0, word.size() - 2);
  }
  return word.substr(0, word.size() - 1);
}

void Recase(EditedToken& token, std::string_view lower_replacement) {
  const Capitalization cap = ClassifyCapitalization(token.text);
  token.text = ApplyCapitalization(lower_replacement, cap);
}

void FixArticles(std::vector<EditedToken>& tokens) {
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string lower = AsciiLower(tokens[i].text);
    if (lower != "a" && lower != "an") continue;
    size_t j = i + 1;
    while (j < tokens.size() && IsOpeningQuote(tokens[j].text)) ++j;
    if (j >= tokens.size() || !tokens[j].edited) continue;
    // First word of a possibly multi-word replacement.
    std::string_view next = tokens[j].text;
    next = next.substr(0, next.find_first_of(" -"));
    const std::string_view want = NeedsAn(next) ? "an" : "a";
    if (lower == want) continue;
    Capitalization cap = ClassifyCapitalization(tokens[i].text);
    // A lone "A" reads as title case, not as a shouted article.
    if (tokens[i].text == "A") cap = Capitalization::kTitle;
    tokens[i].text = ApplyCapitalization(want, cap);
  }
}

void FixVerbAgreement(std::vector<EditedToken>& tokens) {
  for (size_t i = 0; i < tokens.size(); ++i) {
    const bool to_they = tokens[i].to_singular_they;
    const bool from_they = tokens[i].from_they;
    if (!to_they && !from_they) continue;
    for (size_t j = i + 1, seen = 0; j < tokens.size() && seen < 3;
         ++j, ++seen) {
      EditedToken& token = tokens[j];
      const std::string lower = AsciiLower(token.text);
      if (lower == "'" && j == i + 1 && j + 1 < tokens.size()) {
        // Contractions: "he's" -> "they're", "they're" -> "he's".
        EditedToken& tail = tokens[j + 1];
        const std::string t = AsciiLower(tail.text);
        if (to_they && t == "s") Recase(tail, "re");
        if (from_they && (t == "re" || t == "ve")) Recase(tail, "s");
        break;
      }
      if (IsPunctuation(token.text)) break;
      if (AgreementAdverbs().count(lower)) continue;
      if (token.edited) break;
      const auto& map = to_they ? ToTheyVerbs() : FromTheyVerbs();
      if (auto it = map.find(lower); it != map.end()) {
        Recase(token, it->second);
      } else if (to_they &&
                 token.capitalization == Capitalization::kLower) {
        const std::string stripped = StripThirdPerson(lower);
        if (stripped != lower) token.text = stripped;
      }
      break;
    }
  }
}

}  // namespace

bool IsNounLike(std::span<const std::string> right_context) {
  if (right_context.empty()) return false;
  const std::string& word = right_context[0];
  if (word.empty() || IsPunctuation(word)) return false;
  if (word == "own") return true;
  if (Intensifiers().count(word)) {
    if (right_context.size() < 2) return false;
    if (right_context[1] == "much" || right_context[1] == "many") return false;
    return IsNounLike(right_context.subspan(1, 1));
  }
  if (NonNounWords().count(word)) return false;
  if (EndsWith(word, "ing") && !IngNouns().count(word)) return false;
  if (EndsWith(word, "ly") && !LyAdjectives().count(word)) return false;
  return true;
}

PronounCase ResolvePronounCase(const Lexicon& lexicon,
                               std::string_view pronoun,
                               std::span<const std::string> right_context) {
  const std::vector<PronounCase> cases =
      lexicon.PronounCases(AsciiLower(pronoun));
  if (cases.empty()) return PronounCase::kAccusative;
  if (cases.size() == 1) return cases[0];
  auto has = [&](PronounCase c) {
    return std::find(cases.begin(), cases.end(), c) != cases.end();
  };
  if (has(PronounCase::kPossessiveDeterminer) && IsNounLike(right_context)) {
    return PronounCase::kPossessiveDeterminer;
  }
  if (has(PronounCase::kAccusative)) return PronounCase::kAccusative;
  if (has(PronounCase::kPossessivePronoun)) {
    return PronounCase::kPossessivePronoun;
  }
  return cases[0];
}

bool IsColorGuardNoun(std::string_view next) {
  const std::string word = AsciiLower(next);
  if (ColorGuardNouns().count(word)) return true;
  if (EndsWith(word, "es") &&
      ColorGuardNouns().count(std::string_view(word).substr(0, word.size() - 2))) {
    return true;
  }
  return EndsWith(word, "s") &&
         ColorGuardNouns().count(
             std::string_view(word).substr(0, word.size() - 1));
}

bool NeedsAn(std::string_view word) {
  const std::string w = AsciiLower(word);
  if (w.empty()) return false;
  if (w[0] >= '0' && w[0] <= '9') {
    size_t digits = 0;
    while (digits < w.size() && w[digits] >= '0' && w[digits] <= '9') ++digits;
    if (w[0] == '8') return true;
    // 11 and 18 (and 11,000 etc. when read in groups of two or five digits)
    return (digits == 2 || digits == 5) &&
           (w.substr(0, 2) == "11" || w.substr(0, 2) == "18");
  }
  for (std::string_view prefix : {"hour", "honest", "honor", "honour", "heir"}) {
    if (w.rfind(prefix, 0) == 0) return true;
  }
  for (std::string_view prefix :
       {"one", "once", "uni", "use", "usu", "uti", "ura", "ure", "uro", "eu",
        "ewe", "ubiq", "uk"}) {
    if (w.rfind(prefix, 0) == 0) {
      // "unintended", "unimportant" keep "an".
      if (prefix == "uni" &&
          (w.rfind("unin", 0) == 0 || w.rfind("unim", 0) == 0)) {
        return true;
      }
      return false;
    }
  }
  return w[0] == 'a' || w[0] == 'e' || w[0] == 'i' || w[0] == 'o' ||
         w[0] == 'u';
}

std::vector<EditedToken> FixAgreementAndArticles(
    std::vector<EditedToken> tokens) {
  FixVerbAgreement(tokens);
  FixArticles(tokens);
  return tokens;
}

HeuristicPerturber::HeuristicPerturber(const Lexicon* lexicon,
                                       const NameTable* names,
                                       HeuristicMode mode, uint64_t seed)
    : lexicon_(lexicon), names_(names), mode_(mode), seed_(seed) {}

EngineKind HeuristicPerturber::kind() const {
  return mode_ == HeuristicMode::kNaive ? EngineKind::kHeuristicNaive
                                        : EngineKind::kHeuristicGuarded;
}

std::string HeuristicPerturber::ReplacementName(std::string_view name,
                                                Axis axis,
                                                Attribute target) const {
  const std::span<const std::string> bucket = names_->Names(axis, target);
  if (bucket.empty()) return "";
  const std::string key =
      absl::StrCat(AsciiLower(name), "\x1f", Sv(AttributeName(target)));
  return bucket[StableHash64(key, seed_) % bucket.size()];
}

absl::StatusOr<PerturbResult> HeuristicPerturber::Perturb(
    const PerturbRequest& request) const {
  if (absl::Status s = request.Validate(); !s.ok()) return s;
  const bool guarded = mode_ == HeuristicMode::kGuarded;
  const std::string& text = request.text;
  const std::vector<Token> tokens = Tokenize(text);
  const std::vector<CandidateWord> candidates =
      FindCandidates(text, tokens, *lexicon_);

  // The selected word must be a known term with the source attribute.
  bool known = false;
  bool selected = false;
  for (const CandidateWord& c : candidates) {
    if (c.span.begin >= request.word.span.end ||
        request.word.span.begin >= c.span.end) {
      continue;
    }
    known = true;
    if (c.axis == request.axis && c.attribute == request.source) {
      selected = true;
    }
  }
  if (!selected) {
    const std::string surface =
        text.substr(request.word.span.begin, request.word.span.size());
    if (!known && !names_->Contains(surface)) {
      return absl::NotFoundError(absl::StrCat(
          "unknown word '", surface, "': not in the lexicon or name tables"));
    }
    return absl::InvalidArgumentError(absl::StrCat(
        "word '", surface, "' has no ", Sv(AxisName(request.axis)),
        " reading with attribute ", Sv(AttributeName(request.source))));
  }

  std::vector<EditedToken> work;
  work.reserve(tokens.size());
  size_t next_candidate = 0;
  for (size_t i = 0; i < tokens.size();) {
    while (next_candidate < candidates.size() &&
           (candidates[next_candidate].token_index < i ||
            candidates[next_candidate].axis != request.axis)) {
      ++next_candidate;
    }
    const CandidateWord* c = nullptr;
    if (next_candidate < candidates.size() &&
        candidates[next_candidate].token_index == i &&
        candidates[next_candidate].attribute == request.source) {
      c = &candidates[next_candidate];
    }
    if (c == nullptr) {
      EditedToken token;
      token.text = tokens[i].text;
      token.span = tokens[i].span;
      token.capitalization = tokens[i].capitalization;
      work.push_back(std::move(token));
      ++i;
      continue;
    }

    EditedToken token;
    token.span = c->span;
    token.text = c->surface;
    token.capitalization = tokens[i].capitalization;
    const LexiconEntry* entry = &lexicon_->entry(c->entry_index);
    const size_t after = c->token_end();
    const bool guard_fires = guarded && entry->guarded &&
                             after < tokens.size() &&
                             IsColorGuardNoun(tokens[after].text);
    if (!guard_fires) {
      std::string replacement;
      if (entry->category == Category::kName) {
        replacement =
            ReplacementName(c->surface, request.axis, request.target);
        if (!replacement.empty() &&
            token.capitalization == Capitalization::kUpper) {
          replacement = ApplyCapitalization(replacement, Capitalization::kUpper);
        }
      } else {
        if (guarded && entry->category == Category::kPronoun) {
          std::vector<std::string> context;
          for (size_t k = after; k < tokens.size() && context.size() < 2; ++k) {
            context.push_back(AsciiLower(tokens[k].text));
          }
          const PronounCase pronoun_case =
              ResolvePronounCase(*lexicon_, c->surface, context);
          const LexiconEntry* resolved =
              lexicon_->FindPronoun(AsciiLower(c->surface), pronoun_case);
          if (resolved != nullptr && resolved->attribute == request.source) {
            entry = resolved;
          }
        }
        if (const std::string* swap = entry->SwapFor(request.target)) {
          replacement = ApplyCapitalization(*swap, token.capitalization);
        }
      }
      if (!replacement.empty()) {
        token.edited = true;
        if (entry->category == Category::kPronoun) {
          const std::string lower = AsciiLower(replacement);
          token.to_singular_they = lower == "they";
          token.from_they = AsciiLower(c->surface) == "they" && lower != "they";
        }
        token.text = std::move(replacement);
      }
    }
    work.push_back(std::move(token));
    i = after;
  }

  if (guarded) work = FixAgreementAndArticles(std::move(work));

  PerturbResult result;
  result.engine = kind();
  for (const EditedToken& token : work) {
    std::string_view original =
        std::string_view(text).substr(token.span.begin, token.span.size());
    if (token.text != original) {
      result.edits.push_back(
          {token.span, std::string(original), token.text});
    }
  }
  result.text = ApplyEdits(text, result.edits);
  return result;
}

}  // namespace perturbkit
