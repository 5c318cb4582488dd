#!/usr/bin/env python3
#
# Copyright 2026 The PerturbKit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Regenerates data/lexicon.jsonl and data/names.jsonl.

The generated files are committed; run this only when editing the tables
below. Records are written with sorted keys and compact separators so that
the C++ serializer reproduces them byte for byte.
"""

import json
import os
import sys

GENDER = ["man", "woman", "nonbinary_underspecified"]
RACE = ["white", "black", "hispanic_latino", "asian", "native_american",
        "pacific_islander"]
AGE = ["child_u18", "young_18_44", "middle_45_64", "senior_65p",
       "adult_unspecified"]
CASES = ["nominative", "accusative", "possessive_determiner",
         "possessive_pronoun", "reflexive"]

# Generation targets per case. Neopronouns are accepted as input only.
PRONOUN_FORMS = {
    "man": ["he", "him", "his", "his", "himself"],
    "woman": ["she", "her", "her", "hers", "herself"],
    "nonbinary_underspecified": ["they", "them", "their", "theirs",
                                 "themselves"],
}

# (attribute, [surface per case]) in input order. A syncretic surface yields
# one entry per case; the accusative reading is listed first.
PRONOUN_SOURCES = [
    ("man", ["he", "him", "his", "his", "himself"]),
    ("woman", ["she", "her", "her", "hers", "herself"]),
    ("nonbinary_underspecified", ["they", "them", "their", "theirs",
                                  "themselves"]),
    ("nonbinary_underspecified", [None, None, None, None, "themself"]),
    ("nonbinary_underspecified", ["xe", "xem", "xyr", "xyrs", "xemself"]),
    ("nonbinary_underspecified", ["ze", "zir", "zir", "zirs", "zirself"]),
    ("nonbinary_underspecified", [None, "hir", "hir", "hirs", "hirself"]),
    ("nonbinary_underspecified", ["ey", "em", "eir", "eirs", "emself"]),
]

# (woman, man, nonbinary) triples; the first two columns are also sources.
# A leading "*" marks a nonbinary form that is itself a source surface.
GENDER_NOUNS = [
    ("woman", "man", "*person"), ("women", "men", "*people"),
    ("lady", "gentleman", "person"), ("ladies", "gentlemen", "people"),
    ("girl", "boy", "kid"), ("girls", "boys", "kids"),
    ("mother", "father", "*parent"), ("mothers", "fathers", "*parents"),
    ("mom", "dad", "parent"), ("moms", "dads", "parents"),
    ("mum", "dad", "parent"), ("mommy", "daddy", "parent"),
    ("mama", "papa", "parent"),
    ("daughter", "son", "child"), ("daughters", "sons", "children"),
    ("sister", "brother", "*sibling"), ("sisters", "brothers", "*siblings"),
    ("aunt", "uncle", "*pibling"), ("aunts", "uncles", "*piblings"),
    ("niece", "nephew", "*nibling"), ("nieces", "nephews", "*niblings"),
    ("wife", "husband", "*spouse"), ("wives", "husbands", "*spouses"),
    ("bride", "groom", "spouse"), ("brides", "grooms", "spouses"),
    ("girlfriend", "boyfriend", "*partner"),
    ("girlfriends", "boyfriends", "*partners"),
    ("grandmother", "grandfather", "*grandparent"),
    ("grandmothers", "grandfathers", "*grandparents"),
    ("grandma", "grandpa", "grandparent"),
    ("granny", "grandpa", "grandparent"),
    ("granddaughter", "grandson", "*grandchild"),
    ("granddaughters", "grandsons", "*grandchildren"),
    ("stepmother", "stepfather", "*stepparent"),
    ("stepdaughter", "stepson", "*stepchild"),
    ("stepsister", "stepbrother", "*stepsibling"),
    ("queen", "king", "*monarch"), ("queens", "kings", "*monarchs"),
    ("princess", "prince", "royal"), ("princesses", "princes", "royals"),
    ("duchess", "duke", "noble"), ("empress", "emperor", "ruler"),
    ("actress", "actor", "actor"), ("actresses", "actors", "actors"),
    ("waitress", "waiter", "*server"), ("waitresses", "waiters", "servers"),
    ("hostess", "host", "host"), ("heroine", "hero", "hero"),
    ("businesswoman", "businessman", "*businessperson"),
    ("businesswomen", "businessmen", "businesspeople"),
    ("chairwoman", "chairman", "*chairperson"),
    ("spokeswoman", "spokesman", "*spokesperson"),
    ("policewoman", "policeman", "police officer"),
    ("congresswoman", "congressman", "*congressperson"),
    ("sportswoman", "sportsman", "athlete"),
    ("schoolgirl", "schoolboy", "student"),
    ("female", "male", "*nonbinary"), ("females", "males", "nonbinary people"),
    ("feminine", "masculine", "*androgynous"),
    ("womanhood", "manhood", "*personhood"),
    ("sisterhood", "brotherhood", "*siblinghood"),
    ("motherhood", "fatherhood", "*parenthood"),
    ("girlhood", "boyhood", "*childhood"),
]

GENDER_HONORIFICS = [
    ("mrs", "mr", "*mx"), ("ms", "mr", "mx"), ("madam", "sir", "*friend"),
    ("ma'am", "sir", "friend"),
]

# Age nouns/adjectives: surface -> per-attribute forms.
AGE_TERMS = [
    # (surface, category, attribute, {target: replacement})
    ("child", "common_noun", "child_u18",
     {"young_18_44": "young adult", "middle_45_64": "middle-aged adult",
      "senior_65p": "senior", "adult_unspecified": "adult"}),
    ("children", "common_noun", "child_u18",
     {"young_18_44": "young adults", "middle_45_64": "middle-aged adults",
      "senior_65p": "seniors", "adult_unspecified": "adults"}),
    ("kid", "common_noun", "child_u18",
     {"young_18_44": "young adult", "middle_45_64": "middle-aged adult",
      "senior_65p": "senior", "adult_unspecified": "adult"}),
    ("kids", "common_noun", "child_u18",
     {"young_18_44": "young adults", "middle_45_64": "middle-aged adults",
      "senior_65p": "seniors", "adult_unspecified": "adults"}),
    ("boy", "common_noun", "child_u18",
     {"young_18_44": "young man", "middle_45_64": "middle-aged man",
      "senior_65p": "old man", "adult_unspecified": "man"}),
    ("boys", "common_noun", "child_u18",
     {"young_18_44": "young men", "middle_45_64": "middle-aged men",
      "senior_65p": "old men", "adult_unspecified": "men"}),
    ("girl", "common_noun", "child_u18",
     {"young_18_44": "young woman", "middle_45_64": "middle-aged woman",
      "senior_65p": "old woman", "adult_unspecified": "woman"}),
    ("girls", "common_noun", "child_u18",
     {"young_18_44": "young women", "middle_45_64": "middle-aged women",
      "senior_65p": "old women", "adult_unspecified": "women"}),
    ("baby", "common_noun", "child_u18",
     {"young_18_44": "young adult", "middle_45_64": "middle-aged adult",
      "senior_65p": "senior", "adult_unspecified": "adult"}),
    ("toddler", "common_noun", "child_u18",
     {"young_18_44": "young adult", "middle_45_64": "middle-aged adult",
      "senior_65p": "senior", "adult_unspecified": "adult"}),
    ("teenager", "common_noun", "child_u18",
     {"young_18_44": "young adult", "middle_45_64": "middle-aged adult",
      "senior_65p": "senior", "adult_unspecified": "adult"}),
    ("teenagers", "common_noun", "child_u18",
     {"young_18_44": "young adults", "middle_45_64": "middle-aged adults",
      "senior_65p": "seniors", "adult_unspecified": "adults"}),
    ("teen", "common_noun", "child_u18",
     {"young_18_44": "young adult", "middle_45_64": "middle-aged adult",
      "senior_65p": "senior", "adult_unspecified": "adult"}),
    ("teens", "common_noun", "child_u18",
     {"young_18_44": "young adults", "middle_45_64": "middle-aged adults",
      "senior_65p": "seniors", "adult_unspecified": "adults"}),
    ("teenage", "adjective", "child_u18",
     {"young_18_44": "young", "middle_45_64": "middle-aged",
      "senior_65p": "elderly", "adult_unspecified": "adult"}),
    ("adolescent", "common_noun", "child_u18",
     {"young_18_44": "young adult", "middle_45_64": "middle-aged adult",
      "senior_65p": "senior", "adult_unspecified": "adult"}),
    ("youngster", "common_noun", "child_u18",
     {"young_18_44": "young adult", "middle_45_64": "middle-aged adult",
      "senior_65p": "senior", "adult_unspecified": "adult"}),
    ("minor", "common_noun", "child_u18",
     {"young_18_44": "young adult", "middle_45_64": "middle-aged adult",
      "senior_65p": "senior", "adult_unspecified": "adult"}),
    ("young", "adjective", "young_18_44",
     {"child_u18": "teenage", "middle_45_64": "middle-aged",
      "senior_65p": "elderly", "adult_unspecified": "adult"}),
    ("young adult", "common_noun", "young_18_44",
     {"child_u18": "teenager", "middle_45_64": "middle-aged adult",
      "senior_65p": "senior", "adult_unspecified": "adult"}),
    ("young adults", "common_noun", "young_18_44",
     {"child_u18": "teenagers", "middle_45_64": "middle-aged adults",
      "senior_65p": "seniors", "adult_unspecified": "adults"}),
    ("twentysomething", "common_noun", "young_18_44",
     {"child_u18": "teenager", "middle_45_64": "fiftysomething",
      "senior_65p": "senior", "adult_unspecified": "adult"}),
    ("middle-aged", "adjective", "middle_45_64",
     {"child_u18": "teenage", "young_18_44": "young",
      "senior_65p": "elderly", "adult_unspecified": "adult"}),
    ("fiftysomething", "common_noun", "middle_45_64",
     {"child_u18": "teenager", "young_18_44": "twentysomething",
      "senior_65p": "senior", "adult_unspecified": "adult"}),
    ("elderly", "adjective", "senior_65p",
     {"child_u18": "teenage", "young_18_44": "young",
      "middle_45_64": "middle-aged", "adult_unspecified": "adult"}),
    ("senior", "common_noun", "senior_65p",
     {"child_u18": "child", "young_18_44": "young adult",
      "middle_45_64": "middle-aged adult", "adult_unspecified": "adult"}),
    ("seniors", "common_noun", "senior_65p",
     {"child_u18": "children", "young_18_44": "young adults",
      "middle_45_64": "middle-aged adults", "adult_unspecified": "adults"}),
    ("senior citizen", "common_noun", "senior_65p",
     {"child_u18": "child", "young_18_44": "young adult",
      "middle_45_64": "middle-aged adult", "adult_unspecified": "adult"}),
    ("retiree", "common_noun", "senior_65p",
     {"child_u18": "child", "young_18_44": "young adult",
      "middle_45_64": "middle-aged adult", "adult_unspecified": "adult"}),
    ("retirees", "common_noun", "senior_65p",
     {"child_u18": "children", "young_18_44": "young adults",
      "middle_45_64": "middle-aged adults", "adult_unspecified": "adults"}),
    ("pensioner", "common_noun", "senior_65p",
     {"child_u18": "child", "young_18_44": "young adult",
      "middle_45_64": "middle-aged adult", "adult_unspecified": "adult"}),
    ("old man", "common_noun", "senior_65p",
     {"child_u18": "boy", "young_18_44": "young man",
      "middle_45_64": "middle-aged man", "adult_unspecified": "man"}),
    ("old men", "common_noun", "senior_65p",
     {"child_u18": "boys", "young_18_44": "young men",
      "middle_45_64": "middle-aged men", "adult_unspecified": "men"}),
    ("old woman", "common_noun", "senior_65p",
     {"child_u18": "girl", "young_18_44": "young woman",
      "middle_45_64": "middle-aged woman", "adult_unspecified": "woman"}),
    ("old women", "common_noun", "senior_65p",
     {"child_u18": "girls", "young_18_44": "young women",
      "middle_45_64": "middle-aged women", "adult_unspecified": "women"}),
    ("old lady", "common_noun", "senior_65p",
     {"child_u18": "girl", "young_18_44": "young woman",
      "middle_45_64": "middle-aged woman", "adult_unspecified": "woman"}),
    ("old people", "common_noun", "senior_65p",
     {"child_u18": "children", "young_18_44": "young people",
      "middle_45_64": "middle-aged people", "adult_unspecified": "adults"}),
    ("adult", "common_noun", "adult_unspecified",
     {"child_u18": "child", "young_18_44": "young adult",
      "middle_45_64": "middle-aged adult", "senior_65p": "senior"}),
    ("adults", "common_noun", "adult_unspecified",
     {"child_u18": "children", "young_18_44": "young adults",
      "middle_45_64": "middle-aged adults", "senior_65p": "seniors"}),
    ("grown-up", "common_noun", "adult_unspecified",
     {"child_u18": "child", "young_18_44": "young adult",
      "middle_45_64": "middle-aged adult", "senior_65p": "senior"}),
    ("grown-ups", "common_noun", "adult_unspecified",
     {"child_u18": "children", "young_18_44": "young adults",
      "middle_45_64": "middle-aged adults", "senior_65p": "seniors"}),
]

# Race/ethnicity surfaces by form; replacement tables per form.
RACE_FORMS = {
    "adjective": {
        "white": "white", "black": "black", "hispanic_latino": "Hispanic",
        "asian": "Asian", "native_american": "Native American",
        "pacific_islander": "Pacific Islander"},
    "plural": {
        "white": "white people", "black": "black people",
        "hispanic_latino": "Hispanic people", "asian": "Asian people",
        "native_american": "Native Americans",
        "pacific_islander": "Pacific Islanders"},
}
RACE_TERMS = [
    # (surface, attribute, form, guarded)
    ("white", "white", "adjective", True),
    ("whites", "white", "plural", False),
    ("caucasian", "white", "adjective", False),
    ("caucasians", "white", "plural", False),
    ("european american", "white", "adjective", False),
    ("european-american", "white", "adjective", False),
    ("european americans", "white", "plural", False),
    ("black", "black", "adjective", True),
    ("blacks", "black", "plural", False),
    ("african american", "black", "adjective", False),
    ("african-american", "black", "adjective", False),
    ("african americans", "black", "plural", False),
    ("hispanic", "hispanic_latino", "adjective", False),
    ("hispanics", "hispanic_latino", "plural", False),
    ("latino", "hispanic_latino", "adjective", False),
    ("latina", "hispanic_latino", "adjective", False),
    ("latinos", "hispanic_latino", "plural", False),
    ("latinas", "hispanic_latino", "plural", False),
    ("latinx", "hispanic_latino", "adjective", False),
    ("chicano", "hispanic_latino", "adjective", False),
    ("chicana", "hispanic_latino", "adjective", False),
    ("asian", "asian", "adjective", False),
    ("asians", "asian", "plural", False),
    ("asian american", "asian", "adjective", False),
    ("asian-american", "asian", "adjective", False),
    ("asian americans", "asian", "plural", False),
    ("east asian", "asian", "adjective", False),
    ("native american", "native_american", "adjective", False),
    ("native-american", "native_american", "adjective", False),
    ("native americans", "native_american", "plural", False),
    ("american indian", "native_american", "adjective", False),
    ("american indians", "native_american", "plural", False),
    ("alaska native", "native_american", "adjective", False),
    ("alaska natives", "native_american", "plural", False),
    ("indigenous", "native_american", "adjective", False),
    ("pacific islander", "pacific_islander", "adjective", False),
    ("pacific islanders", "pacific_islander", "plural", False),
    ("native hawaiian", "pacific_islander", "adjective", False),
    ("native hawaiians", "pacific_islander", "plural", False),
    ("hawaiian", "pacific_islander", "adjective", False),
    ("polynesian", "pacific_islander", "adjective", False),
    ("samoan", "pacific_islander", "adjective", False),
]

ONES = ["", "one", "two", "three", "four", "five", "six", "seven", "eight",
        "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
        "sixteen", "seventeen", "eighteen", "nineteen"]
TENS = ["", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy",
        "eighty", "ninety"]

# Canonical exemplar per age bucket for number phrases.
AGE_EXEMPLAR = {"child_u18": 10, "young_18_44": 20, "middle_45_64": 50,
                "senior_65p": 70}


def number_word(n):
  if n < 20:
    return ONES[n]
  tens, ones = divmod(n, 10)
  return TENS[tens] + ("-" + ONES[ones] if ones else "")


def age_bucket(n):
  if n < 18:
    return "child_u18"
  if n < 45:
    return "young_18_44"
  if n < 65:
    return "middle_45_64"
  return "senior_65p"


def number_phrases():
  out = []
  for n in range(1, 100):
    bucket = age_bucket(n)
    for spell in (number_word, str):
      for pattern, adult in (("{} years old", "an adult"),
                             ("{}-year-old", "adult")):
        swaps = {}
        for target in AGE:
          if target == bucket:
            continue
          if target == "adult_unspecified":
            swaps[target] = adult
          else:
            swaps[target] = pattern.format(spell(AGE_EXEMPLAR[target]))
        out.append({"surface": pattern.format(spell(n)), "axis": "age",
                    "attribute": bucket, "category": "number_phrase",
                    "swaps": swaps})
  return out


NAMES = {
    ("gender", "man"): [
        "James", "John", "Robert", "Michael", "David", "Richard", "Joseph",
        "Thomas", "Charles", "Daniel", "Matthew", "Anthony", "Donald",
        "Steven", "Paul", "Andrew", "Joshua", "Kenneth", "Kevin", "Brian",
        "George", "Edward", "Ronald", "Timothy", "Jason", "Jeffrey", "Ryan",
        "Jacob", "Gary", "Nicholas", "Eric", "Jonathan", "Stephen", "Larry",
        "Justin", "Scott", "Brandon", "Benjamin", "Samuel", "Gregory",
        "Frank", "Raymond", "Patrick", "Jack", "Dennis", "Jerry", "Tyler",
        "Aaron", "Henry", "Adam", "Douglas", "Nathan", "Peter", "Zachary",
        "Kyle", "Walter", "Harold", "Jeremy", "Ethan", "Carl", "Keith",
        "Roger", "Gerald", "Christian", "Arthur", "Austin", "Noah",
        "Lawrence", "Jesse", "Joe", "Bryan", "Albert", "Dylan", "Bruce",
        "Gabriel", "Alan", "Juan", "Logan", "Wayne", "Ralph", "Roy",
        "Eugene", "Vincent", "Russell", "Louis", "Philip", "Victor", "Lee",
        "Jamal", "Malik", "DeShawn", "Carlos", "Hiroshi", "Keoni", "Takoda",
        "Albert", "Jay", "Jacob"],
    ("gender", "woman"): [
        "Mary", "Patricia", "Jennifer", "Linda", "Elizabeth", "Barbara",
        "Susan", "Jessica", "Sarah", "Karen", "Lisa", "Nancy", "Betty",
        "Margaret", "Sandra", "Ashley", "Kimberly", "Emily", "Donna",
        "Michelle", "Carol", "Amanda", "Dorothy", "Melissa", "Deborah",
        "Stephanie", "Rebecca", "Sharon", "Laura", "Cynthia", "Kathleen",
        "Amy", "Angela", "Shirley", "Anna", "Brenda", "Pamela", "Emma",
        "Nicole", "Helen", "Samantha", "Katherine", "Christine", "Rachel",
        "Carolyn", "Janet", "Catherine", "Maria", "Heather", "Diane", "Ruth",
        "Julie", "Olivia", "Joyce", "Virginia", "Victoria", "Kelly", "Lauren",
        "Christina", "Joan", "Evelyn", "Judith", "Megan", "Andrea", "Cheryl",
        "Hannah", "Jacqueline", "Martha", "Gloria", "Teresa", "Ann", "Sara",
        "Madison", "Frances", "Kathryn", "Janice", "Jean", "Abigail",
        "Alice", "Julia", "Judy", "Sophia", "Grace", "Denise", "Amber",
        "Doris", "Marilyn", "Danielle", "Beverly", "Isabella", "Theresa",
        "Diana", "Natalie", "Brittany", "Charlotte", "Marie", "Kayla",
        "Sue", "Latoya", "Keisha", "Priya", "Leilani", "Aiyana", "Lucia"],
    ("gender", "nonbinary_underspecified"): [
        "Alex", "Jordan", "Taylor", "Riley", "Casey", "Jamie", "Avery",
        "Quinn", "Rowan", "Sage", "Skyler", "Morgan", "Charlie", "Emerson",
        "Finley", "Hayden", "Parker", "Reese", "Dakota", "Kendall", "Peyton",
        "River", "Phoenix", "Robin", "Sam", "Frankie", "Jessie", "Ash",
        "Blair", "Drew", "Eden", "Ellis", "Harper", "Jules", "Kris",
        "Lennon", "Marlowe", "Noel", "Oakley", "Remy", "Shiloh", "Tatum"],
    ("race_ethnicity", "white"): [
        "Connor", "Cody", "Wyatt", "Brett", "Hunter", "Claire", "Molly",
        "Katie", "Logan", "Garrett", "Heather", "Colleen", "Tanner", "Brooke"],
    ("race_ethnicity", "black"): [
        "Jamal", "DeShawn", "Tyrone", "Darnell", "Malik", "Terrell", "Latoya",
        "Keisha", "Imani", "Aaliyah", "Ebony", "Tanisha", "Jalen", "Kareem"],
    ("race_ethnicity", "hispanic_latino"): [
        "Jose", "Carlos", "Luis", "Juan", "Miguel", "Alejandro", "Diego",
        "Guadalupe", "Sofia", "Lucia", "Camila", "Ximena", "Mateo",
        "Esperanza"],
    ("race_ethnicity", "asian"): [
        "Yitong", "Wei", "Hiroshi", "Jin", "Hyun", "Priya", "Anh", "Mei",
        "Yuki", "Akira", "Jia", "Ling", "Kenji", "Sanjay"],
    ("race_ethnicity", "native_american"): [
        "Ahanu", "Takoda", "Aiyana", "Kohana", "Chayton", "Nayeli", "Dyani",
        "Elan", "Istas", "Kiona", "Hakan", "Tala", "Wapi", "Winona"],
    ("race_ethnicity", "pacific_islander"): [
        "Keoni", "Leilani", "Kalani", "Makoa", "Malia", "Kainoa", "Sione",
        "Losa", "Tevita", "Moana", "Iosefa", "Noelani", "Mele", "Pita"],
}


def dedupe(seq):
  seen = set()
  out = []
  for x in seq:
    if x not in seen:
      seen.add(x)
      out.append(x)
  return out


def pronoun_entries():
  out = []
  seen = set()
  for attribute, surfaces in PRONOUN_SOURCES:
    # Accusative before possessive determiner so naive lookups of a
    # syncretic form hit the accusative reading first.
    order = [1, 0, 2, 3, 4]
    for case_index in order:
      surface = surfaces[case_index]
      if surface is None:
        continue
      case = CASES[case_index]
      key = (surface, case)
      if key in seen:
        continue
      seen.add(key)
      swaps = {a: PRONOUN_FORMS[a][case_index] for a in GENDER}
      out.append({"surface": surface, "axis": "gender",
                  "attribute": attribute, "category": "pronoun",
                  "features": {"case": case, "number": "singular"},
                  "swaps": swaps})
  return out


def gender_noun_entries():
  out = []
  seen = set()
  for row, category in ([(r, "common_noun") for r in GENDER_NOUNS] +
                        [(r, "honorific") for r in GENDER_HONORIFICS]):
    woman, man, nonbinary = row
    nb_source = nonbinary.startswith("*")
    nonbinary = nonbinary.lstrip("*")
    forms = {"woman": woman, "man": man,
             "nonbinary_underspecified": nonbinary}
    sources = [("woman", woman), ("man", man)]
    if nb_source:
      sources.append(("nonbinary_underspecified", nonbinary))
    for attribute, surface in sources:
      if surface in seen:
        continue
      seen.add(surface)
      swaps = {a: forms[a] for a in GENDER if a != attribute}
      out.append({"surface": surface, "axis": "gender",
                  "attribute": attribute, "category": category,
                  "swaps": swaps})
  return out


def age_entries():
  out = []
  for surface, category, attribute, swaps in AGE_TERMS:
    out.append({"surface": surface, "axis": "age", "attribute": attribute,
                "category": category, "swaps": dict(swaps)})
  return out + number_phrases()


def race_entries():
  out = []
  for surface, attribute, form, guarded in RACE_TERMS:
    table = RACE_FORMS[form]
    entry = {"surface": surface, "axis": "race_ethnicity",
             "attribute": attribute, "category": "adjective"
             if form == "adjective" else "common_noun",
             "swaps": {a: table[a] for a in RACE if a != attribute}}
    if guarded:
      entry["guarded"] = True
    out.append(entry)
  return out


def name_entries(names):
  out = []
  for (axis, attribute), bucket in names.items():
    for name in bucket:
      out.append({"surface": name.lower(), "axis": axis,
                  "attribute": attribute, "category": "name"})
  return out


def dump(record):
  return json.dumps(record, sort_keys=True, separators=(",", ":"),
                    ensure_ascii=False)


def main():
  root = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..")
  data = os.path.join(root, "data")
  names = {k: dedupe(v) for k, v in NAMES.items()}
  for axis in ("gender", "race_ethnicity"):
    seen = {}
    for (a, attribute), bucket in names.items():
      if a != axis:
        continue
      for name in bucket:
        if name in seen:
          sys.exit(f"{name} in {seen[name]} and {attribute}")
        seen[name] = attribute

  entries = (pronoun_entries() + gender_noun_entries() + race_entries() +
             age_entries() + name_entries(names))
  with open(os.path.join(data, "lexicon.jsonl"), "w", encoding="utf-8") as f:
    f.write("perturbkit-lexicon v1\n")
    for e in entries:
      f.write(dump(e) + "\n")
  with open(os.path.join(data, "names.jsonl"), "w", encoding="utf-8") as f:
    f.write("perturbkit-names v1\n")
    for (axis, attribute), bucket in names.items():
      f.write(dump({"axis": axis, "attribute": attribute,
                    "names": bucket}) + "\n")
  print(f"{len(entries)} lexicon entries", file=sys.stderr)


if __name__ == "__main__":
  main()
