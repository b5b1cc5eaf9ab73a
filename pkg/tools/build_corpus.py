#!/usr/bin/env python3
"""Regenerate the bundled lexicon and template corpus.

The two assets are co-designed around two invariants:

1. Exact bin scores.  The only lexicon words appearing in any template are
   its sentiment-slot words, and every slot word in a bin's templates
   carries that bin's exact center valence.  The mean valence over matched
   tokens therefore reproduces the bin center bit-for-bit (slot counts are
   powers of two), keeping the bin -> score mapping exactly monotone.
   Everything else in the templates (and the default query) comes from a
   closed "filler" vocabulary that is checked to be disjoint from the
   whole lexicon.

2. Flat fluency.  Every slot word counts exactly three syllables under the
   bundled heuristic, and every skeleton is padded to the same word and
   syllable totals, so all templates share one fluency grade.  Reward
   differences between bins then reflect engagement only, not an accident
   of word length or template choice.

Run from the repository root:  python tools/build_corpus.py
"""

import re
import sys
from math import fsum
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from engagesim.policy import bin_centers  # noqa: E402
from engagesim.scoring import count_syllables, fk_grade  # noqa: E402

WORD_RUN = re.compile(r"[a-z]+")
SLOT_SYLLABLES = 3

# ---------------------------------------------------------------------------
# Core banks: eight slot adjectives per sentiment bin.  These are the only
# lexicon entries templates may use; each carries its bin center exactly and
# counts exactly SLOT_SYLLABLES under the bundled heuristic.
# ---------------------------------------------------------------------------

BANKS = [
    # 0.00
    ["horrific", "atrocious", "abysmal", "despicable",
     "horrendous", "demonic", "satanic", "barbaric"],
    # 0.05
    ["appalling", "revolting", "sickening", "detestable",
     "malicious", "venomous", "poisonous", "sinister"],
    # 0.10
    ["disgusting", "repulsive", "vindictive", "repellent",
     "abhorrent", "nauseating", "grotesque", "malignant"],
    # 0.15
    ["miserable", "repugnant", "deplorable", "sorrowful",
     "lamentable", "pitiful", "pathetic", "despairing"],
    # 0.20
    ["unfriendly", "destructive", "offensive", "abusive",
     "damaging", "arrogant", "barbarous", "oppressive"],
    # 0.25
    ["unpleasant", "obnoxious", "upsetting", "distressing",
     "troublesome", "vexatious", "disturbing", "unsettling"],
    # 0.30
    ["tiresome", "bothersome", "unwelcome", "regrettable",
     "frustrating", "maddening", "worrisome", "wearisome"],
    # 0.35
    ["defective", "deficient", "imperfect", "inferior",
     "lackluster", "substandard", "rickety", "forgettable"],
    # 0.40
    ["questionable", "insipid", "lethargic", "colorless",
     "flavorless", "pedestrian", "ponderous", "monotone"],
    # 0.45
    ["average", "nondescript", "moderate", "temperate",
     "regular", "habitual", "impartial", "vanilla"],
    # 0.50
    ["generic", "uniform", "objective", "unbiased",
     "general", "familiar", "measured", "typical"],
    # 0.55
    ["acceptable", "adequate", "tolerable", "reasonable",
     "sufficient", "serviceable", "practical", "functional"],
    # 0.60
    ["competent", "dependable", "effective", "efficient",
     "consistent", "productive", "trustworthy", "proficient"],
    # 0.65
    ["obliging", "welcoming", "comforting", "refreshing",
     "satisfying", "congenial", "personable", "hospitable"],
    # 0.70
    ["inviting", "generous", "amicable", "heartwarming",
     "endearing", "devoted", "spirited", "delightful"],
    # 0.75
    ["admirable", "impressive", "elegant", "engaging",
     "beautiful", "attractive", "appealing", "memorable"],
    # 0.80
    ["excellent", "wonderful", "terrific", "fabulous",
     "marvelous", "remarkable", "uplifting", "rewarding"],
    # 0.85
    ["amazing", "fantastic", "outstanding", "stupendous",
     "tremendous", "enchanting", "astounding", "glittering"],
    # 0.90
    ["incredible", "breathtaking", "majestic", "magical",
     "heavenly", "luminous", "resplendent", "exalted"],
    # 0.95
    ["angelic", "ethereal", "seraphic", "transcendent",
     "exquisite", "victorious", "celestial", "unearthly"],
    # 1.00
    ["unbeatable", "unmatchable", "ultimate", "absolute",
     "consummate", "untouchable", "optimal", "impeccable"],
]

# ---------------------------------------------------------------------------
# Template skeletons.  {0}, {1}, ... are sentiment slots.  Every other word
# belongs to the filler vocabulary and must stay out of the lexicon.
# ---------------------------------------------------------------------------

QUERY = "Cats are the most"

SKELETONS = [
    "{0} and utterly {1} creatures that ever wandered into our homes and "
    "quietly claimed every corner of them.",
    "{0} animals a household could possibly endeavor to welcome through "
    "its own front doorway on any particular evening.",
    "{0} companions imaginable, and every neighbour along the street would "
    "call them {1} without a moment of hesitation.",
    "{0} little emperors, {1} over breakfast, {2} throughout the entire "
    "afternoon, and {3} long after the midnight hour.",
    "{0} judges of character, and anybody sharing a sofa with one "
    "recognizes exactly how {1} they truly are.",
    "{0} housemates, always patrolling the hallway, checking every parcel, "
    "and watching whoever passes near the kitchen window ledge.",
]

# slot counts must be powers of two so the mean of identical valences is exact
SLOT_COUNTS = [2, 1, 2, 4, 2, 1]

# ---------------------------------------------------------------------------
# Padding vocabulary: realistic evaluative words that flesh the lexicon out
# to its documented ~1,500 entries.  Their precise valences never influence
# template scores (disjointness from the filler set is asserted below).
# ---------------------------------------------------------------------------

VOWELS = "aeiou"

# bank words whose derived -ly form would be awkward or wrong
ADVERB_SKIP = {"sinister", "damaging", "upsetting", "troublesome", "bothersome",
               "unwelcome", "worrisome", "wearisome", "inferior", "lackluster",
               "substandard", "rickety", "flavorless", "pedestrian", "monotone",
               "average", "nondescript", "vanilla", "unbiased", "measured",
               "serviceable", "trustworthy", "welcoming", "personable",
               "heartwarming", "uplifting", "rewarding", "glittering",
               "heavenly", "exalted", "unearthly", "unbeatable", "unmatchable",
               "untouchable", "unfriendly", "repellent"}


def adverb_of(word: str) -> str:
    if word.endswith("ic"):
        return word + "ally"
    if word.endswith("le") and word[-3] not in VOWELS:
        return word[:-1] + "y"
    if word.endswith("y") and word[-2] not in VOWELS:
        return word[:-1] + "ily"
    return word + "ly"


def verb_forms(stem: str) -> list[str]:
    if stem.endswith(("s", "x", "z", "ch", "sh")):
        third = stem + "es"
    elif stem.endswith("y") and stem[-2] not in VOWELS:
        third = stem[:-1] + "ies"
    else:
        third = stem + "s"
    if stem.endswith("e"):
        past, gerund = stem + "d", stem[:-1] + "ing"
    elif stem.endswith("y") and stem[-2] not in VOWELS:
        past, gerund = stem[:-1] + "ied", stem + "ing"
    elif (len(stem) >= 3 and stem[-1] not in VOWELS + "wxy"
          and stem[-2] in VOWELS and stem[-3] not in VOWELS):
        past, gerund = stem + stem[-1] + "ed", stem + stem[-1] + "ing"
    else:
        past, gerund = stem + "ed", stem + "ing"
    return [stem, third, past, gerund]


VERBS = {
    0.00: ["terrify", "horrify", "traumatize", "brutalize", "devastate"],
    0.05: ["appall", "sicken", "revolt", "despise", "detest", "loathe",
           "destroy", "poison", "doom", "betray", "corrupt", "defile"],
    0.10: ["disgust", "repulse", "hate", "torment", "ruin", "wreck",
           "fester", "curse", "menace", "humiliate", "deceive", "cheat",
           "swindle", "degrade", "slander", "frighten"],
    0.15: ["dread", "depress", "grieve", "suffer", "shatter", "crush",
           "harm", "wound", "threaten", "scare", "insult", "ridicule",
           "scorn", "demean", "smear", "abandon", "decay"],
    0.20: ["sadden", "mourn", "fail", "mock", "dismay", "alarm",
           "neglect", "taint"],
    0.25: ["distress", "upset", "offend", "irritate", "disturb",
           "flounder", "snub", "unsettle"],
    0.30: ["annoy", "vex", "frustrate", "regret", "worry",
           "embarrass", "falter", "stumble"],
    0.35: ["disappoint"],
    0.40: ["bore", "tire"],
    0.55: ["tolerate", "accept", "suffice"],
    0.65: ["satisfy", "comfort", "refresh", "soothe"],
    0.70: ["please", "enjoy", "charm", "gladden", "brighten", "succeed"],
    0.75: ["delight", "admire", "flourish", "thrive", "glow", "sparkle"],
    0.80: ["cherish", "treasure", "impress", "fascinate",
           "inspire", "uplift", "excite"],
    0.85: ["adore", "amaze", "stun", "dazzle", "captivate", "mesmerize",
           "thrill", "triumph", "excel", "enchant", "astound"],
    0.90: ["astonish"],
}

NOUNS = {
    0.00: ["horror", "terror", "catastrophe"],
    0.05: ["despair", "anguish", "agony", "nightmare", "disaster",
           "calamity", "filth", "squalor", "plague", "hatred", "malice",
           "cruelty", "brutality", "savagery", "treachery", "betrayal",
           "wrath"],
    0.10: ["misery", "grief", "tragedy", "stench", "vermin", "venom",
           "spite", "villainy", "deceit", "fraud", "disgrace", "rage"],
    0.15: ["sorrow", "gloom", "shame", "outrage", "fury"],
    0.20: ["misfortune", "scandal"],
    0.25: ["nuisance", "burden"],
    0.30: ["annoyance", "bother", "hassle"],
    0.35: ["drag", "chore"],
    0.40: ["tedium"],
    0.45: ["monotony"],
    0.50: ["routine", "norm", "midpoint"],
    0.70: ["cheer", "friendship", "kindness"],
    0.75: ["warmth", "peace", "success", "victory"],
    0.80: ["wonder", "grace", "harmony", "happiness"],
    0.85: ["joy", "marvel", "beauty", "elegance", "gem", "jewel"],
    0.90: ["splendor", "grandeur", "glory", "masterpiece"],
    0.95: ["bliss", "paradise", "heaven", "miracle"],
}

# regular plural forms added for these NOUNS entries
PLURAL_STEMS = ["nightmare", "disaster", "calamity", "tragedy", "miracle",
                "masterpiece", "gem", "jewel", "marvel", "chore", "hassle",
                "burden", "nuisance", "scandal", "victory", "success", "joy"]

ABSTRACT_NOUNS = {
    0.05: ["dreadfulness", "ghastliness", "vileness", "wickedness"],
    0.10: ["awfulness", "foulness", "hideousness"],
    0.15: ["nastiness", "grimness", "bitterness", "sourness", "gloominess",
           "bleakness", "dreariness", "hopelessness"],
    0.20: ["ugliness", "rottenness", "harshness", "viciousness", "rudeness",
           "meanness", "pettiness", "selfishness", "greed", "arrogance",
           "smugness", "coldness"],
    0.25: ["weakness", "feebleness", "clumsiness", "awkwardness",
           "sloppiness", "messiness", "unpleasantness"],
    0.35: ["laziness", "shoddiness"],
    0.40: ["tediousness", "dullness", "boredom"],
    0.45: ["blandness", "mildness"],
    0.50: ["ordinariness", "commonness", "plainness", "neutrality"],
    0.55: ["fairness", "adequacy", "usefulness"],
    0.60: ["soundness", "steadiness", "reliability", "competence"],
    0.65: ["pleasantness", "gentleness", "tenderness", "sweetness",
           "freshness", "neatness", "tidiness", "cleanliness"],
    0.70: ["friendliness", "cheerfulness", "goodness", "niceness",
           "gladness", "merriment", "calmness", "honesty", "loyalty",
           "generosity"],
    0.75: ["loveliness", "gracefulness", "prettiness", "attractiveness",
           "allure", "charisma", "wisdom"],
    0.80: ["excellence", "serenity", "tranquility", "peacefulness",
           "delightfulness", "splendidness"],
    0.85: ["brilliance", "joyfulness", "magnificence", "wonderfulness"],
    0.90: ["radiance", "gloriousness", "majesty", "sublimity"],
    0.95: ["ecstasy", "euphoria", "exquisiteness"],
    1.00: ["perfection", "flawlessness", "supremacy"],
}

EXTRA_ADJECTIVES = {
    0.00: ["monstrous", "vile", "heinous", "abominable", "diabolical",
           "nefarious", "execrable", "accursed", "infernal", "murderous",
           "unspeakable", "unforgivable", "irredeemable", "evil",
           "inhuman"],
    0.05: ["dreadful", "ghastly", "loathsome", "wicked", "villainous",
           "fiendish", "hellish", "malevolent", "toxic", "rancid",
           "putrid", "macabre",
           "gruesome", "grisly", "ruthless", "merciless", "heartless",
           "soulless", "depraved", "godforsaken"],
    0.10: ["terrible", "awful", "horrible", "hateful", "wretched", "foul",
           "devilish", "cursed", "filthy", "squalid", "slimy", "grubby",
           "grimy", "seedy", "sordid", "shabby", "shoddy", "trashy",
           "vulgar", "crude", "obscene", "profane", "hostile", "spiteful",
           "callous", "worthless", "disgraceful", "dishonorable"],
    0.15: ["nasty", "dismal", "hideous", "odious", "grim", "bitter",
           "sour", "rancorous", "resentful", "sullen", "surly", "gloomy",
           "bleak", "dreary", "desolate", "forlorn", "hopeless",
           "joyless", "cheerless", "somber", "mournful", "tragic",
           "disastrous", "calamitous", "ruinous", "useless", "unfair",
           "unloved", "unwanted", "dishonest", "disloyal",
           "disrespectful"],
    0.20: ["bad", "cruel", "ugly", "rotten", "harsh", "brutal", "savage",
           "vicious", "painful", "hurtful", "harmful", "unkind", "rude",
           "mean", "petty", "selfish", "greedy", "smug", "haughty",
           "icy", "aloof", "stingy", "unhappy", "unclean", "unsafe",
           "unwelcoming", "ungrateful", "unworthy", "uncouth",
           "shameless", "distasteful"],
    0.25: ["disagreeable", "clumsy", "awkward", "graceless", "tactless",
           "careless", "sloppy", "messy", "untidy", "chaotic",
           "disorderly", "unreliable", "shifty", "sketchy", "shaky",
           "flimsy", "brittle", "feeble", "frail", "weak", "unlucky",
           "pointless", "senseless", "helpless", "luckless",
           "uncomfortable", "ungracious", "discourteous", "unpleasing",
           "undependable", "dysfunctional"],
    0.30: ["unfortunate", "galling", "troubling", "worrying",
           "disquieting", "discouraging", "disheartening", "dispiriting",
           "grating", "jarring", "abrasive", "tacky", "gaudy", "garish",
           "unwise", "unstable", "unsound", "unhelpful", "unruly",
           "unkempt", "uneasy", "meaningless", "thankless", "hapless",
           "disorganized"],
    0.35: ["mediocre", "subpar", "unsatisfactory", "inadequate",
           "lacking", "flawed", "faulty", "broken", "busted", "clunky",
           "crummy", "lousy", "junky", "cheap", "worn", "stale", "dated",
           "obsolete", "threadbare", "unimpressive"],
    0.40: ["dubious", "tedious", "uninspiring", "unremarkable", "dull",
           "wearying", "sluggish", "listless", "lifeless", "limp",
           "watery", "thin", "hollow", "vacant", "vapid", "stodgy",
           "turgid", "plodding", "leaden", "laborious"],
    0.45: ["bland", "drab", "mundane", "prosaic", "uneventful",
           "humdrum", "monotonous", "unexciting", "uninteresting",
           "indifferent", "middling", "modest", "lukewarm", "tepid",
           "mild", "tame", "faint", "muted", "subdued", "neutral",
           "ambivalent", "unassuming"],
    0.50: ["ordinary", "standard", "common", "usual", "plain", "normal",
           "conventional", "traditional", "everyday", "basic",
           "intermediate", "medium", "balanced", "factual", "customary",
           "unexceptional"],
    0.55: ["passable", "fair", "suitable", "fine", "okay", "alright",
           "workable", "viable", "useful", "usable", "handy", "helpful",
           "convenient", "fitting", "proper", "appropriate",
           "respectable", "presentable", "manageable", "bearable"],
    0.60: ["decent", "satisfactory", "solid", "sound", "capable",
           "steady", "sturdy", "robust", "stable", "secure", "safe",
           "trusty", "reliable", "sensible", "prudent", "thoughtful",
           "considerate", "polite", "courteous", "gracious", "orderly"],
    0.65: ["pleasant", "likable", "enjoyable", "kind", "gentle",
           "tender", "caring", "soothing", "calming", "restful", "cozy",
           "snug", "neat", "tidy", "clean", "fresh", "crisp", "sweet",
           "mellow", "smooth", "amiable", "cordial", "easygoing"],
    0.70: ["good", "nice", "friendly", "warm", "cheerful", "happy",
           "glad", "merry", "jolly", "sunny", "playful", "lively",
           "vibrant", "vivid", "colorful", "honest", "sincere",
           "genuine", "loyal", "faithful", "affectionate", "loving",
           "hopeful", "optimistic", "rosy", "favorable", "advantageous",
           "beneficial", "encouraging", "promising", "amusing",
           "entertaining", "placid", "calm", "relaxed", "content",
           "toasty", "balmy", "shiny", "glossy", "keen", "agile",
           "nimble", "quick", "sharp", "shrewd", "fashionable"],
    0.75: ["great", "lovely", "graceful", "handsome", "pretty",
           "alluring", "striking", "valuable", "heartening", "skillful",
           "talented", "clever", "smart", "wise", "astute", "perceptive",
           "poised", "cultured", "tasteful", "stylish", "chic", "sleek",
           "contented", "gleeful", "observant", "noble", "trendy",
           "heartened", "amused", "entertained", "tickled", "lustrous",
           "darling", "dear", "winsome"],
    0.80: ["splendid", "superb", "superior", "fulfilling", "gratifying",
           "compelling", "gripping", "serene", "tranquil", "peaceful",
           "insightful", "refined", "polished", "sophisticated",
           "blessed", "prized", "esteemed", "famed", "gifted",
           "gleaming", "beaming", "shimmering", "saintly",
           "joyous", "golden"],
    0.85: ["brilliant", "exceptional", "precious", "revered", "renowned",
           "celebrated", "acclaimed", "epic", "iconic", "beloved",
           "riveting", "jubilant", "joyful", "distinguished", "eminent",
           "prestigious", "sterling", "regal"],
    0.90: ["magnificent", "phenomenal", "spectacular", "astonishing",
           "extraordinary", "pristine", "legendary", "illustrious",
           "exemplary", "masterful", "spellbinding", "stellar",
           "invaluable", "elated", "exultant", "overjoyed", "grand",
           "monumental", "towering", "dizzying"],
    0.95: ["glorious", "sublime", "wondrous", "miraculous", "radiant",
           "immaculate", "ideal", "superlative", "unmatched",
           "incomparable", "priceless", "euphoric", "ecstatic",
           "blissful", "otherworldly"],
    1.00: ["perfect", "flawless", "divine", "peerless", "matchless",
           "supreme", "unrivaled", "quintessential", "definitive",
           "faultless", "untarnished", "spotless", "seamless",
           "unsurpassed"],
}

# -ly forms derived from padding words (valence inherited from the stem,
# which must already be in the lexicon)
EXTRA_ADVERB_STEMS = [
    "terrible", "awful", "horrible", "dreadful", "nasty", "bad", "cruel",
    "harsh", "brutal", "savage", "vicious", "monstrous", "vile",
    "hideous", "dismal", "grim", "wretched", "hateful",
    "unfortunate", "dubious", "tedious", "dull", "bland",
    "mundane", "ordinary", "usual", "common", "plain", "fair",
    "decent", "solid", "sound", "steady", "pleasant", "nice", "warm",
    "cheerful", "great", "lovely", "graceful", "splendid", "superb",
    "brilliant", "exceptional", "magnificent", "phenomenal", "spectacular",
    "extraordinary", "glorious", "sublime", "wondrous", "miraculous",
    "radiant", "perfect", "flawless", "divine", "supreme",
    "ruthless", "merciless", "bitter", "gloomy", "bleak", "dreary",
    "hopeless", "tragic", "painful", "harmful", "rude", "selfish",
    "greedy", "clumsy", "awkward", "careless", "sloppy",
    "weak", "sluggish", "mild", "tame", "faint", "normal",
    "useful", "helpful", "proper", "safe", "reliable", "sensible",
    "thoughtful", "polite", "kind", "gentle", "tender", "calm", "neat",
    "clean", "fresh", "sweet", "smooth", "happy", "glad", "merry",
    "playful", "vivid", "honest", "sincere", "genuine", "loyal",
    "faithful", "hopeful", "serene", "peaceful", "noble",
    "pretty", "clever", "smart", "wise", "joyful",
    "blissful", "ecstatic", "ideal", "wicked", "devilish",
    "vulgar", "crude", "filthy", "dishonest", "unfair", "useless",
    "helpless", "uneasy", "cheap", "boring",
]


def conflict_free_add(lexicon: dict[str, float], word: str, valence: float,
                      origin: str, problems: list[str]) -> None:
    existing = lexicon.get(word)
    if existing is None:
        lexicon[word] = valence
    elif existing != valence:
        problems.append(f"{origin}: {word!r} wants {valence} but is already {existing}")


def build_lexicon(centers, problems: list[str]) -> dict[str, float]:
    def snap(tier: float) -> float:
        # padding tiers are written as short literals; store the exact
        # bin-center double so same-word collisions compare equal
        return centers[round(tier * 20)]

    lexicon: dict[str, float] = {}
    for center, bank in zip(centers, BANKS):
        for word in bank:
            if word in lexicon:
                problems.append(f"bank word {word!r} duplicated")
            lexicon[word] = float(center)
            if count_syllables(word) != SLOT_SYLLABLES:
                problems.append(f"bank word {word!r} counts "
                                f"{count_syllables(word)} syllables, "
                                f"wanted {SLOT_SYLLABLES}")
    for center, bank in zip(centers, BANKS):
        for word in bank:
            if word not in ADVERB_SKIP:
                conflict_free_add(lexicon, adverb_of(word), float(center),
                                  "bank adverb", problems)
    for valence, stems in VERBS.items():
        for stem in stems:
            for form in verb_forms(stem):
                conflict_free_add(lexicon, form, snap(valence), f"verb {stem}", problems)
    for valence, words in NOUNS.items():
        for word in words:
            conflict_free_add(lexicon, word, snap(valence), "noun", problems)
    for valence, words in ABSTRACT_NOUNS.items():
        for word in words:
            conflict_free_add(lexicon, word, snap(valence), "abstract noun", problems)
    for valence, words in EXTRA_ADJECTIVES.items():
        for word in words:
            conflict_free_add(lexicon, word, snap(valence), "extra adjective", problems)
    for stem in PLURAL_STEMS:
        if stem not in lexicon:
            problems.append(f"plural stem {stem!r} missing from lexicon")
            continue
        if stem.endswith(("s", "x", "z", "ch", "sh")):
            plural = stem + "es"
        elif stem.endswith("y") and stem[-2] not in VOWELS:
            plural = stem[:-1] + "ies"
        else:
            plural = stem + "s"
        conflict_free_add(lexicon, plural, lexicon[stem], "plural", problems)
    for stem in EXTRA_ADVERB_STEMS:
        if stem not in lexicon:
            problems.append(f"adverb stem {stem!r} missing from lexicon")
            continue
        conflict_free_add(lexicon, adverb_of(stem), lexicon[stem],
                          f"adverb of {stem}", problems)
    return lexicon


def build_templates(centers) -> list[tuple[int, str]]:
    records = []
    for b, (center, bank) in enumerate(zip(centers, BANKS)):
        for j, skeleton in enumerate(SKELETONS):
            slots = [bank[(j + 2 * t) % 8] for t in range(SLOT_COUNTS[j])]
            records.append((b, skeleton.format(*slots)))
    return records


def main() -> None:
    centers = [float(c) for c in bin_centers()]
    problems: list[str] = []
    lexicon = build_lexicon(centers, problems)
    templates = build_templates(centers)

    filler: set[str] = set(WORD_RUN.findall(QUERY.lower()))
    for b, text in templates:
        filler.update(WORD_RUN.findall(text.lower()))
    slot_words = {w for bank in BANKS for w in bank}
    filler -= slot_words

    for word, valence in lexicon.items():
        if not re.fullmatch(r"[a-z]+", word):
            problems.append(f"lexicon word not scorable as a token: {word!r}")
        if not 0.0 <= valence <= 1.0:
            problems.append(f"valence out of range: {word}={valence}")
    overlap = filler & set(lexicon)
    if overlap:
        problems.append(f"filler words leaked into lexicon: {sorted(overlap)}")
    for center, bank in zip(centers, BANKS):
        for word in bank:
            if lexicon[word] != center:
                problems.append(f"bank word {word!r} lost its center valence")
    if not 1400 <= len(lexicon) <= 1600:
        problems.append(f"lexicon size {len(lexicon)} outside ~1,500 band")

    grades_by_skeleton: dict[int, set[float]] = {}
    for index, (b, text) in enumerate(templates):
        tokens = WORD_RUN.findall(text.lower())
        hits = [lexicon[t] for t in tokens if t in lexicon]
        score = fsum(hits) / len(hits)
        if score != centers[b]:
            problems.append(f"bin {b} template scores {score!r}, wanted {centers[b]!r}")
        report = fk_grade(f"{QUERY} {text}")
        if report.sentences != 1:
            problems.append(f"bin {b} template is not a single sentence: {text!r}")
        alone = fk_grade(text)
        if alone.grade < 2.0:
            problems.append(f"bin {b} template grade {alone.grade:.2f} < 2: {text!r}")
        if alone.words < 15:
            problems.append(f"bin {b} template has {alone.words} words < 15")
        grades_by_skeleton.setdefault(index % len(SKELETONS), set()).add(alone.grade)
    all_grades = set().union(*grades_by_skeleton.values())
    if len(all_grades) != 1:
        problems.append(f"template grades are not uniform: {sorted(all_grades)}")

    if problems:
        raise SystemExit("corpus invariants violated:\n  " + "\n  ".join(problems))

    data_dir = ROOT / "src" / "engagesim" / "data"
    data_dir.mkdir(parents=True, exist_ok=True)
    with open(data_dir / "lexicon.csv", "w", encoding="utf-8", newline="\n") as handle:
        handle.write("# word,valence\n")
        for word in sorted(lexicon):
            handle.write(f"{word},{lexicon[word]!r}\n")
    with open(data_dir / "templates.tsv", "w", encoding="utf-8", newline="\n") as handle:
        handle.write("# bin_index<TAB>template_text\n")
        for b, text in templates:
            handle.write(f"{b}\t{text}\n")

    print(f"lexicon: {len(lexicon)} words   templates: {len(templates)} "
          f"({len(templates) // len(BANKS)} per bin)   uniform grade: "
          f"{all_grades.pop():.2f}")


if __name__ == "__main__":
    main()
