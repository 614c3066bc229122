#!/usr/bin/env python3
"""Regenerate the bundled synthetic fixtures under data/.

Deterministic: fixed seed, insertion-ordered JSON keys. The corpus is a
themed multi-label collection of fake publication records whose vocabulary
lines up with the sample query banks, so the query stage, the weak-
supervision training stage and the evaluation tooling all have something
meaningful to chew on. No real bibliographic data is included.
"""

import json
import random
from pathlib import Path

SEED = 20240901
OUT = Path(__file__).resolve().parent.parent / "data"

REGIONS = [
    "sub-Saharan Africa", "South Asia", "Latin America", "Southeast Asia",
    "Eastern Europe", "the Pacific islands", "West Africa", "the Andes",
    "coastal Bangladesh", "rural India", "northern Kenya", "the Mekong delta",
    "Aotearoa New Zealand", "the Sahel", "small island states",
]

FILLER_SENTENCES = [
    "We analyse a panel of survey data collected between {y0} and {y1}.",
    "The study combines qualitative interviews with administrative records.",
    "Results are robust to alternative model specifications.",
    "We discuss implications for policy design and future research.",
    "A mixed-methods design links household surveys to satellite data.",
    "Findings are compared against three regional baselines.",
    "The dataset covers {n} observations across {m} districts.",
    "Limitations and avenues for further work are outlined.",
]

GENERIC_KEYWORDS = [
    "panel data", "policy analysis", "survey methods", "remote sensing",
    "case study", "systematic review", "longitudinal study", "governance",
]

GENERIC_JOURNALS = [
    ("PLOS ONE", [1000]),
    ("Scientific Reports", [1000]),
    ("Sustainability", [3305]),
    ("World Development", [2002, 3303]),
]

# One entry per theme: sentences must carry the phrases the bundled
# queries look for, with varied token distances so proximity operators
# have work to do.
THEMES = {
    "sdg1_poverty": {
        "sdg": 1,
        "title_bits": [
            "extreme poverty", "poverty alleviation", "cash transfer programs",
            "income deprivation", "multidimensional poverty", "poverty traps",
        ],
        "sentences": [
            "Extreme poverty persists in {region} despite decades of growth.",
            "We estimate how extreme levels of poverty respond to cash transfers.",
            "Social protection programs reduce household poverty and deprivation.",
            "Alleviating poverty requires access to land, credit and basic services.",
            "Livelihood diversification shields poor households from income shocks.",
            "Poverty among rural households deepens after repeated crop failure.",
        ],
        "keywords": [
            "extreme poverty", "social protection", "cash transfers",
            "poverty alleviation", "livelihoods", "deprivation",
        ],
        "journals": [
            ("Journal of Development Economics", [2002]),
            ("World Development", [2002, 3303]),
            ("Journal of Poverty and Social Justice", [3303]),
        ],
        "fulltext": ["poverty line", "household consumption", "income distribution"],
    },
    "sdg1_microfinance": {
        "sdg": 1,
        "title_bits": [
            "microfinance access", "micro-finance institutions", "financial inclusion",
            "microcredit uptake", "village savings groups",
        ],
        "sentences": [
            "Microfinance expands access to credit for poor rural households in {region}.",
            "Access to micro-finance and property rights improves resilience of the poor.",
            "Financial inclusion programs reach women excluded from formal banking.",
            "Microcredit take-up is highest where collateral requirements are relaxed.",
        ],
        "keywords": ["microfinance", "financial inclusion", "microcredit", "access to property"],
        "journals": [
            ("Journal of Development Economics", [2002]),
            ("World Development", [2002, 3303]),
        ],
        "fulltext": ["loan repayment", "group lending", "collateral"],
    },
    "sdg2_food": {
        "sdg": 2,
        "title_bits": [
            "food security", "smallholder agriculture", "crop yields",
            "malnutrition in children", "sustainable agricultural intensification",
        ],
        "sentences": [
            "Food security deteriorates when drought reduces average crop yield in {region}.",
            "We measure food and nutrition security among smallholder farmers.",
            "Malnutrition among children falls with diversified diets and school meals.",
            "Agricultural extension raises smallholder productivity and farm income.",
            "Irrigation and improved seed varieties stabilise agricultural production.",
        ],
        "keywords": [
            "food security", "malnutrition", "smallholder farmers", "agriculture",
            "crop yield", "nutrition",
        ],
        "journals": [
            ("Food Policy", [1106, 2002]),
            ("Agricultural Systems", [1102, 1106]),
        ],
        "fulltext": ["dietary diversity", "staple crops", "harvest losses"],
    },
    "sdg3_health": {
        "sdg": 3,
        "title_bits": [
            "maternal mortality", "vaccine coverage", "infectious disease burden",
            "mental health services", "malaria prevention", "tuberculosis incidence",
        ],
        "sentences": [
            "Maternal mortality declines where skilled birth attendance expands in {region}.",
            "Vaccine coverage against measles remains below herd-immunity thresholds.",
            "The burden of infectious disease concentrates in low-income districts.",
            "Community mental health services reduce untreated depression.",
            "Insecticide-treated nets cut malaria transmission among children.",
            "Indoor air pollution from cooking fuels aggravates respiratory disease.",
        ],
        "keywords": [
            "maternal health", "vaccination", "epidemiology", "mental health",
            "malaria", "public health",
        ],
        "journals": [
            ("The Lancet Global Health", [2713, 2739]),
            ("BMC Public Health", [2739]),
            ("Bulletin of the World Health Organization", [2713]),
        ],
        "fulltext": ["disease surveillance", "health systems", "case fatality"],
    },
    "sdg4_education": {
        "sdg": 4,
        "title_bits": [
            "education access", "early childhood education", "teacher training",
            "learning outcomes", "school enrolment", "adult literacy",
        ],
        "sentences": [
            "Access to education improves when school fees are abolished in {region}.",
            "Early childhood education raises later learning outcomes.",
            "Teacher training programs lift numeracy and literacy in rural schools.",
            "School enrolment of girls rises with conditional stipends.",
            "Adult literacy classes expand economic participation.",
        ],
        "keywords": [
            "education", "literacy", "teacher training", "learning outcomes",
            "early childhood education", "curriculum",
        ],
        "journals": [
            ("International Journal of Educational Development", [3304]),
            ("Teaching and Teacher Education", [3304]),
        ],
        "fulltext": ["classroom observation", "standardised tests", "school management"],
    },
    "sdg5_gender": {
        "sdg": 5,
        "title_bits": [
            "gender equality", "women's empowerment", "female labour participation",
            "gender-based violence", "women in leadership",
        ],
        "sentences": [
            "Gender equality in land ownership strengthens women's bargaining power in {region}.",
            "Empowerment of women accelerates when childcare is publicly provided.",
            "Female labour force participation responds to parental leave reform.",
            "Programs addressing gender based violence reduce intimate partner violence.",
            "Quotas increase the share of women in local leadership positions.",
        ],
        "keywords": [
            "gender equality", "women empowerment", "female employment",
            "gender based violence", "women leadership",
        ],
        "journals": [
            ("Gender and Society", [3318, 3303]),
            ("Feminist Economics", [2002, 3318]),
        ],
        "fulltext": ["intra-household allocation", "time use", "wage gap"],
    },
    "sdg6_water": {
        "sdg": 6,
        "title_bits": [
            "drinking water quality", "sanitation coverage", "wastewater treatment",
            "groundwater depletion", "water scarcity",
        ],
        "sentences": [
            "Drinking water quality improves with chlorination at point of use in {region}.",
            "Sanitation coverage lags behind water supply in informal settlements.",
            "Wastewater treatment removes nutrient loads before river discharge.",
            "Groundwater tables fall under intensive irrigation pumping.",
            "Safe water access cuts diarrhoeal disease in young children.",
        ],
        "keywords": [
            "water quality", "sanitation", "wastewater", "groundwater",
            "drinking water", "hygiene",
        ],
        "journals": [
            ("Water Research", [2312]),
            ("Journal of Hydrology", [2312, 1909]),
        ],
        "fulltext": ["contaminant load", "water supply networks", "faecal coliforms"],
    },
    "sdg7_energy": {
        "sdg": 7,
        "title_bits": [
            "renewable energy transitions", "solar photovoltaic adoption",
            "wind power integration", "energy efficiency retrofits",
            "rural electrification", "clean cooking fuels",
        ],
        "sentences": [
            "Renewable energy capacity doubles under feed-in tariffs in {region}.",
            "Solar photovoltaic systems reach off-grid households through microgrids.",
            "Wind power integration requires flexible storage and demand response.",
            "Energy efficiency retrofits cut residential electricity consumption.",
            "Rural electrification raises study hours and small-business activity.",
        ],
        "keywords": [
            "renewable energy", "solar energy", "wind power", "energy efficiency",
            "electrification", "energy access",
        ],
        "journals": [
            ("Renewable Energy", [2105]),
            ("Energy Policy", [2103, 2002]),
        ],
        "fulltext": ["levelised cost", "grid integration", "capacity factor"],
    },
    "sdg13_climate": {
        "sdg": 13,
        "title_bits": [
            "climate change adaptation", "greenhouse gas emissions",
            "carbon pricing", "climate resilience", "global warming impacts",
        ],
        "sentences": [
            "Climate change intensifies drought frequency across {region}.",
            "Greenhouse gas emissions from agriculture fall under improved manure management.",
            "Carbon pricing shifts investment toward low-carbon technologies.",
            "Communities build resilience to climate shocks through early-warning systems.",
            "Global warming of 1.5 degrees reshapes crop suitability maps.",
            "CO₂ fluxes from drained peatlands dominate regional emission budgets.",
        ],
        "keywords": [
            "climate change", "greenhouse gas", "adaptation", "mitigation",
            "carbon emissions", "resilience",
        ],
        "journals": [
            ("Climatic Change", [2306, 2312]),
            ("Global Environmental Change", [2306, 3303]),
        ],
        "fulltext": ["emission scenarios", "downscaled projections", "carbon budget"],
    },
    "sdg14_marine": {
        "sdg": 14,
        "title_bits": [
            "marine pollution", "fisheries management", "coastal management",
            "aquaculture systems", "ocean acidification", "coral reef decline",
            "eutrophication of estuaries",
        ],
        "sentences": [
            "Marine pollution from plastic debris accumulates along {region} coastlines.",
            "Fisheries management with catch quotas rebuilds depleted stocks.",
            "Integrated coastal management balances aquaculture and conservation.",
            "Ocean acidification impairs shell formation in commercial shellfish.",
            "Eutrophication drives algal blooms in shallow coastal waters.",
            "Marine protected areas increase spawning biomass of reef fish.",
            "Pollution of harbours by antifouling paints declines after regulation.",
        ],
        "keywords": [
            "marine pollution", "fisheries", "coastal management", "aquaculture",
            "marine environment", "eutrophication", "aquatic ecosystem",
        ],
        "journals": [
            ("Marine Pollution Bulletin", [1910, 2310]),
            ("Marine Policy", [1910, 3303]),
            ("Aquaculture", [1104]),
        ],
        "fulltext": ["stock assessment", "bycatch", "marine spatial planning"],
    },
    "sdg16_peace": {
        "sdg": 16,
        "title_bits": [
            "armed conflict dynamics", "corruption and governance",
            "access to justice", "rule of law reforms", "human rights accountability",
        ],
        "sentences": [
            "Armed conflict displaces rural populations across {region}.",
            "Corruption in procurement erodes trust in public institutions.",
            "Access to justice improves with mobile courts and legal aid.",
            "Rule of law reforms reduce pretrial detention times.",
            "Human rights monitoring deters violence against civilians.",
        ],
        "keywords": [
            "armed conflict", "corruption", "rule of law", "human rights",
            "institutions", "governance",
        ],
        "journals": [
            ("Journal of Peace Research", [3320, 3303]),
            ("Governance", [3321, 3303]),
        ],
        "fulltext": ["conflict events", "institutional quality", "transitional justice"],
    },
    # background themes: never labeled with an SDG
    "bg_materials": {
        "sdg": None,
        "title_bits": [
            "perovskite thin films", "alloy microstructure", "battery cathode materials",
            "semiconductor heterostructures", "polymer composites",
        ],
        "sentences": [
            "We characterise thin films grown by pulsed laser deposition.",
            "Grain boundary engineering improves creep resistance of the alloy.",
            "Cathode degradation is traced to transition-metal dissolution.",
            "Band alignment is measured across the heterojunction.",
            "Mechanical testing shows anisotropic fracture behaviour.",
        ],
        "keywords": ["microstructure", "thin films", "x-ray diffraction", "composites"],
        "journals": [
            ("Acta Materialia", [2500]),
            ("Physical Review B", [3104]),
        ],
        "fulltext": ["lattice parameter", "annealing", "phase diagram"],
    },
    "bg_computing": {
        "sdg": None,
        "title_bits": [
            "graph algorithms", "distributed consensus", "query optimisation",
            "neural machine translation", "type inference",
        ],
        "sentences": [
            "We prove tight bounds for the streaming model.",
            "The protocol tolerates byzantine failures with low message overhead.",
            "Query plans are optimised with learned cardinality estimates.",
            "Attention-based models improve translation of low-resource languages.",
            "The type system supports gradual migration of legacy code.",
        ],
        "keywords": ["algorithms", "distributed systems", "machine translation", "compilers"],
        "journals": [
            ("Journal of the ACM", [1700]),
            ("IEEE Transactions on Knowledge and Data Engineering", [1702]),
        ],
        "fulltext": ["benchmark suite", "asymptotic bounds", "ablation"],
    },
    "bg_astro": {
        "sdg": None,
        "title_bits": [
            "galaxy formation", "exoplanet atmospheres", "pulsar timing",
            "dark matter halos", "stellar nucleosynthesis",
        ],
        "sentences": [
            "Simulations reproduce the observed galaxy luminosity function.",
            "Transit spectroscopy reveals water vapour in the upper atmosphere.",
            "Timing residuals constrain the gravitational wave background.",
            "Halo concentrations correlate with formation epoch.",
            "Abundance patterns trace successive supernova enrichment.",
        ],
        "keywords": ["galaxies", "exoplanets", "dark matter", "spectroscopy"],
        "journals": [
            ("Monthly Notices of the Royal Astronomical Society", [3103]),
            ("The Astrophysical Journal", [3103]),
        ],
        "fulltext": ["n-body simulation", "light curve", "redshift survey"],
    },
}

# (theme, count) — totals 1120 records
PLAN = [
    ("sdg1_poverty", 60), ("sdg1_microfinance", 40),
    ("sdg2_food", 90),
    ("sdg3_health", 120),
    ("sdg4_education", 85),
    ("sdg5_gender", 80),
    ("sdg6_water", 90),
    ("sdg7_energy", 95),
    ("sdg13_climate", 100),
    ("sdg14_marine", 110),
    ("sdg16_peace", 75),
    ("bg_materials", 60), ("bg_computing", 55), ("bg_astro", 60),
]

# plausible secondary theme per primary, applied to a fraction of records
SECONDARY = {
    "sdg1_poverty": "sdg2_food",
    "sdg1_microfinance": "sdg5_gender",
    "sdg2_food": "sdg13_climate",
    "sdg3_health": "sdg6_water",
    "sdg4_education": "sdg5_gender",
    "sdg5_gender": "sdg16_peace",
    "sdg6_water": "sdg14_marine",
    "sdg7_energy": "sdg13_climate",
    "sdg13_climate": "sdg14_marine",
    "sdg14_marine": "sdg13_climate",
    "sdg16_peace": "sdg1_poverty",
}

UNICODE_SPICE = [
    " A case from Māori-led initiatives is included.",
    " The naïve baseline is re-estimated with survey weights.",
    "効率 metrics are reported in the appendix.",
    " We include a résumé of prior field campaigns.",
    " CO₂-equivalent figures follow IPCC conventions.",
]


def sentence_fill(rng, template):
    return (
        template.replace("{region}", rng.choice(REGIONS))
        .replace("{y0}", str(rng.randint(1998, 2008)))
        .replace("{y1}", str(rng.randint(2009, 2021)))
        .replace("{n}", str(rng.randint(400, 90000)))
        .replace("{m}", str(rng.randint(5, 80)))
    )


def make_record(rng, idx, theme_name, secondary_name):
    theme = THEMES[theme_name]
    secondary = THEMES[secondary_name] if secondary_name else None

    bits = [rng.choice(theme["title_bits"])]
    if secondary and rng.random() < 0.7:
        bits.append(rng.choice(secondary["title_bits"]))
    joiner = rng.choice([": evidence from {}", " and {}", " in {}: a review"])
    if len(bits) == 2:
        title = f"{bits[0].capitalize()} and {bits[1]} in {rng.choice(REGIONS)}"
    else:
        title = bits[0].capitalize() + joiner.format(rng.choice(REGIONS))

    sentence_pool = list(theme["sentences"])
    if secondary:
        sentence_pool += rng.sample(secondary["sentences"], k=2)
    count = rng.randint(2, 4)
    sentences = [sentence_fill(rng, s) for s in rng.sample(sentence_pool, k=count)]
    sentences.append(sentence_fill(rng, rng.choice(FILLER_SENTENCES)))
    abstract = " ".join(sentences)
    if rng.random() < 0.06:
        abstract += rng.choice(UNICODE_SPICE)

    keywords = rng.sample(theme["keywords"], k=rng.randint(2, 4))
    if secondary and rng.random() < 0.6:
        keywords.append(rng.choice(secondary["keywords"]))
    if rng.random() < 0.4:
        keywords.append(rng.choice(GENERIC_KEYWORDS))

    journal_pool = theme["journals"] + ([] if rng.random() < 0.75 else GENERIC_JOURNALS)
    journal, asjc = rng.choice(journal_pool)
    asjc = list(asjc)
    if secondary and rng.random() < 0.5:
        asjc += rng.choice(secondary["journals"])[1][:1]
    asjc = sorted(set(asjc))

    record = {
        "id": f"p{idx:04d}",
        "title": title,
        "abstract": abstract,
        "keywords": keywords,
        "journal": journal,
        "asjc": asjc,
    }
    if rng.random() < 0.3:
        pool = theme["fulltext"] + (secondary["fulltext"] if secondary else [])
        record["fulltext_terms"] = rng.sample(pool, k=min(3, len(pool)))
    record["year"] = rng.randint(2009, 2022)

    gold = set()
    if theme["sdg"]:
        gold.add(theme["sdg"])
    if secondary and secondary["sdg"]:
        gold.add(secondary["sdg"])
    return record, sorted(gold)


def add_references(rng, records, theme_of):
    by_theme = {}
    for i, record in enumerate(records):
        by_theme.setdefault(theme_of[i], []).append(record["id"])
    for i, record in enumerate(records):
        if rng.random() < 0.35:
            continue
        pool = by_theme[theme_of[i]]
        k = rng.randint(1, 5)
        refs = sorted(
            {rid for rid in rng.sample(pool, k=min(k, len(pool))) if rid != record["id"]}
        )
        if rng.random() < 0.25 and len(records) > 1:
            other = rng.choice(records)["id"]
            if other != record["id"]:
                refs = sorted(set(refs) | {other})
        if refs:
            record["references"] = refs


BANKS = {
    "sdg01.txt": """\
# SDG 1 SDG1-Main
TITLE-ABS-KEY("extreme poverty" OR ("poverty" W/3 "alleviat*") OR "multidimensional poverty")

# SDG 1 SDG1-Theme1
TITLE-ABS-KEY("social protection" OR "cash transfer*")

# SDG 1 SDG1-Theme2
TITLE-ABS-KEY("microfinance" OR "micro-finance" OR "microcredit" OR ("access" W/4 "credit"))

# SDG 1 SDG1-Theme3
ABS("poverty" W/5 "households") AND NOT SUBJAREA(25, 31)
""",
    "sdg02.txt": """\
# SDG 2 SDG2-Main
TITLE-ABS-KEY("food security" OR ("food" W/2 "nutrition security"))

# SDG 2 SDG2-Theme1
TITLE-ABS-KEY("malnutrition" OR "dietary diversity")

# SDG 2 SDG2-Theme2
(TITLE("agricultur*") OR KEY("smallholder farmers")) AND SUBJAREA(11)

# SDG 2 SDG2-Theme3
ABS("crop" PRE/1 "yield*")
""",
    "sdg03.txt": """\
# SDG 3 SDG3-Main
TITLE-ABS-KEY("maternal mortality" OR "infectious disease*" OR "malaria" OR "tuberculosis")

# SDG 3 SDG3-Theme1
TITLE-ABS-KEY("vaccin*") AND NOT SUBJAREA(34)

# SDG 3 SDG3-Theme2
TITLE-ABS-KEY("mental health")

# SDG 3 SDG3-Theme3
SRCTITLE("public health") OR SRCTITLE("lancet")
""",
    "sdg04.txt": """\
# SDG 4 SDG4-Main
TITLE-ABS-KEY(("education" W/3 "access") OR "school enrolment" OR "learning outcomes")

# SDG 4 SDG4-Theme1
TITLE-ABS-KEY("early childhood education" OR ("teacher" PRE/1 "training"))

# SDG 4 SDG4-Theme2
TITLE-ABS-KEY("literacy") AND SUBJAREA(3304)
""",
    "sdg05.txt": """\
# SDG 5 SDG5-Main
TITLE-ABS-KEY("gender equality" OR ("women*" W/3 "empowerment"))

# SDG 5 SDG5-Theme1
TITLE-ABS-KEY("gender based violence" OR "intimate partner violence")

# SDG 5 SDG5-Theme2
TITLE-ABS-KEY(("female" OR "women") AND ("labour" OR "labor" OR "leadership"))
""",
    "sdg06.txt": """\
# SDG 6 SDG6-Main
TITLE-ABS-KEY(("drinking" PRE/1 "water") OR "water quality" OR "water scarcity")

# SDG 6 SDG6-Theme1
TITLE-ABS-KEY("sanitation" OR "hygiene" OR "wastewater")

# SDG 6 SDG6-Theme2
TITLE-ABS-KEY("groundwater" W/5 "irrigation")
""",
    "sdg07.txt": """\
# SDG 7 SDG7-Main
TITLE-ABS-KEY("renewab*" OR "solar photovoltaic*" OR ("wind" PRE/1 "power"))

# SDG 7 SDG7-Theme1
TITLE-ABS-KEY("energy efficiency" OR "energy access" OR "electrification")

# SDG 7 SDG7-Theme2
KEY("clean cooking" OR "energy access") OR SRCTITLE("energy polic*")

# SDG 7 SDG7-Theme3
TITLE-ABS-KEY("solar" OR "wind") AND SUBJAREA(21) AND NOT TITLE-ABS-KEY("galax*")
""",
    "sdg13.txt": """\
# SDG 13 SDG13-Main
TITLE-ABS-KEY(("climate" PRE/1 "change") OR "global warming")

# SDG 13 SDG13-Theme1
TITLE-ABS-KEY("greenhouse gas*" OR "carbon pricing" OR ("carbon" W/2 "emission*"))

# SDG 13 SDG13-Theme2
TITLE-ABS-KEY(("climate" W/4 "adapt*") OR ("resilien*" W/5 "climate"))

# SDG 13 SDG13-Theme3
TITLE-ABS-KEY("co2")
""",
    "sdg14.txt": """\
# SDG 14 SDG14-Main
TITLE-ABS-KEY("marine" OR "fisheries" OR "coastal management" OR "aquaculture") AND NOT SUBJAREA(27)

# SDG 14 SDG14-Theme1
TITLE-ABS-KEY("pollut*") AND SUBJAREA(19, 23, 11)

# SDG 14 SDG14-Theme2
TITLE-ABS-KEY("eutrophicat*" OR "alga*" OR ("ocean" PRE/1 "acidification"))

# SDG 14 SDG14-Theme3
SRCTITLE("marine") OR SRCTITLE("aquaculture")

# SDG 14 SDG14-Theme4
KEY("aquatic ecosystem" OR "marine environment")
""",
    "sdg16.txt": """\
# SDG 16 SDG16-Main
TITLE-ABS-KEY(("armed" PRE/1 "conflict*") OR "corruption" OR "rule of law")

# SDG 16 SDG16-Theme1
TITLE-ABS-KEY("human rights" OR ("access" W/2 "justice"))

# SDG 16 SDG16-Theme2
TITLE-ABS-KEY("governance" AND "institutions") AND SUBJAREA(33)
""",
}

COURSES = [
    ("c0001", "Marine Ecology and Coastal Management",
     "Field course covering fisheries, aquaculture and pollution of coastal ecosystems."),
    ("c0002", "Poverty, Inequality and Development",
     "Survey of poverty measurement, social protection and microfinance."),
    ("c0003", "Renewable Energy Systems",
     "Design of solar photovoltaic and wind power systems with storage."),
    ("c0004", "Climate Change Adaptation Planning",
     "Scenario methods for greenhouse gas budgets and resilience planning."),
    ("c0005", "Algorithms and Data Structures",
     "Classical graph algorithms, complexity analysis and lower bounds."),
    ("c0006", "Global Health Epidemiology",
     "Disease burden estimation, vaccine program evaluation and surveillance."),
]


def main():
    rng = random.Random(SEED)
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "queries").mkdir(exist_ok=True)
    (OUT / "validation").mkdir(exist_ok=True)

    records, golds, theme_of = [], [], []
    idx = 1
    for theme_name, count in PLAN:
        for _ in range(count):
            secondary = None
            if THEMES[theme_name]["sdg"] and rng.random() < 0.22:
                secondary = SECONDARY[theme_name]
            record, gold = make_record(rng, idx, theme_name, secondary)
            records.append(record)
            golds.append(gold)
            theme_of.append(theme_name)
            idx += 1
    add_references(rng, records, theme_of)

    # keep key order: optional references/fulltext_terms before year
    with open(OUT / "corpus.jsonl", "w", encoding="utf-8") as f:
        for record in records:
            ordered = {k: record[k] for k in
                       ["id", "title", "abstract", "keywords", "journal", "asjc"]}
            if "fulltext_terms" in record:
                ordered["fulltext_terms"] = record["fulltext_terms"]
            if "references" in record:
                ordered["references"] = record["references"]
            ordered["year"] = record["year"]
            f.write(json.dumps(ordered, ensure_ascii=False) + "\n")

    for name, text in BANKS.items():
        (OUT / "queries" / name).write_text(text, encoding="utf-8")

    # gold validation sample: themed records only, every 3rd
    with open(OUT / "validation" / "synthetic_gold.jsonl", "w", encoding="utf-8") as f:
        taken = 0
        for record, gold in zip(records, golds):
            if not gold:
                continue
            taken += 1
            if taken % 3 != 0:
                continue
            f.write(json.dumps({"id": record["id"], "gold": gold}) + "\n")

    # journal-based recall set for SDG 14
    marine_journals = {"Marine Pollution Bulletin", "Marine Policy", "Aquaculture"}
    with open(OUT / "validation" / "marine_recall.jsonl", "w", encoding="utf-8") as f:
        for record in records:
            if record["journal"] in marine_journals:
                f.write(json.dumps({"id": record["id"], "gold": [14]}) + "\n")

    with open(OUT / "courses.jsonl", "w", encoding="utf-8") as f:
        for cid, title, description in COURSES:
            f.write(json.dumps(
                {"id": cid, "title": title, "description": description},
                ensure_ascii=False) + "\n")

    print(f"wrote {len(records)} records")


if __name__ == "__main__":
    main()
