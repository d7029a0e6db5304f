#!/usr/bin/env python3
"""Generate the bundled fixture city under data/fixture/.

The city is a 9 x 9 street grid (about 120 m blocks) near the Champ de Mars,
with parks, trees, wheelchair-accessible nodes, tourism POIs, a few
non-walkable roads, a disconnected footpath island, a gazetteer, an air
quality grid, a 100-passage corpus and a 40-query evaluation dataset.

Output is deterministic; re-running rewrites identical files.
"""

import json
import math
import os
import sys
from xml.sax.saxutils import quoteattr

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
OUT = os.path.join(ROOT, "data", "fixture")

LAT0, LON0 = 48.8500, 2.2900
DLAT = 0.00108   # ~120 m
DLON = 0.00164   # ~120 m at this latitude
N = 9

ROW_STREETS = [
    ("Rue de Grenelle", {"highway": "residential", "sidewalk": "both"}),
    ("Rue Cler", {"highway": "pedestrian"}),
    ("Rue Saint-Dominique", {"highway": "residential", "sidewalk": "both"}),
    ("Rue de l'Universite", {"highway": "living_street"}),
    ("Avenue Rapp", {"highway": "primary", "sidewalk": "both"}),
    ("Rue de Varenne", {"highway": "residential", "sidewalk": "right"}),
    ("Rue de Babylone", {"highway": "footway"}),
    ("Rue de Sevres", {"highway": "residential", "sidewalk": "left"}),
    ("Quai Branly", {"highway": "footway", "footway": "sidewalk"}),
]
COL_STREETS = [
    ("Avenue de Suffren", {"highway": "residential", "sidewalk": "both"}),
    ("Allee Thomy Thierry", {"highway": "pedestrian"}),
    ("Avenue Bosquet", {"highway": "secondary", "sidewalk": "both"}),
    ("Rue Amelie", {"highway": "living_street"}),
    ("Boulevard de la Tour-Maubourg", {"highway": "residential", "sidewalk": "right"}),
    ("Sentier des Jardins", {"highway": "path"}),
    ("Rue de Bellechasse", {"highway": "residential", "sidewalk": "left"}),
    ("Passage Vaneau", {"highway": "pedestrian"}),
    ("Rue du Bac", {"highway": "residential", "sidewalk": "both"}),
]


def grid_id(r, c):
    return 100 + r * 10 + c


def grid_pos(r, c):
    return round(LAT0 + r * DLAT, 7), round(LON0 + c * DLON, 7)


def offset(pos, north_m, east_m):
    lat, lon = pos
    dlat = north_m / 111195.0
    dlon = east_m / (111195.0 * math.cos(math.radians(lat)))
    return round(lat + dlat, 7), round(lon + dlon, 7)


class City:
    def __init__(self):
        self.nodes = []   # (id, lat, lon, tags)
        self.ways = []    # (id, refs, tags)
        self.next_node = 1000
        self.next_way = 5000

    def node(self, pos, tags=None, node_id=None):
        if node_id is None:
            node_id = self.next_node
            self.next_node += 1
        self.nodes.append((node_id, pos[0], pos[1], dict(tags or {})))
        return node_id

    def way(self, refs, tags):
        way_id = self.next_way
        self.next_way += 1
        self.ways.append((way_id, list(refs), dict(tags)))
        return way_id

    def write_osm(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write('<?xml version="1.0" encoding="UTF-8"?>\n')
            f.write('<osm version="0.6" generator="gen_fixture.py">\n')
            f.write('  <bounds minlat="48.8490" minlon="2.2890" maxlat="48.8600" maxlon="2.3100"/>\n')
            for node_id, lat, lon, tags in self.nodes:
                attrs = f'id="{node_id}" lat="{lat:.7f}" lon="{lon:.7f}"'
                if not tags:
                    f.write(f"  <node {attrs}/>\n")
                    continue
                f.write(f"  <node {attrs}>\n")
                for k in sorted(tags):
                    f.write(f"    <tag k={quoteattr(k)} v={quoteattr(tags[k])}/>\n")
                f.write("  </node>\n")
            for way_id, refs, tags in self.ways:
                f.write(f'  <way id="{way_id}">\n')
                for ref in refs:
                    f.write(f'    <nd ref="{ref}"/>\n')
                for k in sorted(tags):
                    f.write(f"    <tag k={quoteattr(k)} v={quoteattr(tags[k])}/>\n")
                f.write("  </way>\n")
            f.write('  <relation id="1">\n    <member type="way" ref="5000" role="outer"/>\n'
                    '    <tag k="type" v="multipolygon"/>\n  </relation>\n')
            f.write("</osm>\n")


# Gazetteer places sit on grid intersections.
PLACES = {
    "Eiffel Tower": (0, 0),
    "Champ de Mars": (2, 2),
    "Place de la Concorde": (8, 0),
    "Musee d'Orsay": (8, 4),
    "Louvre": (8, 8),
    "Notre Dame": (4, 8),
    "Jardin des Plantes": (0, 8),
    "Pantheon": (2, 6),
    "Invalides": (6, 2),
    "Rodin Museum": (5, 4),
}

# name, category, block (r, c) of the intersection it sits next to, offset (north, east) in m
POIS = [
    ("Tour Eiffel Viewpoint", "viewpoint", (0, 0), (25, 20)),
    ("Musee du Quai Branly", "museum", (0, 2), (-20, 30)),
    ("Galerie Cler", "gallery", (1, 3), (15, 40)),
    ("Cafe du Marche", "cafe", (1, 5), (15, -30)),
    ("Fontaine de Mars", "artwork", (2, 3), (20, 50)),
    ("Hotel Duquesne", "hotel", (3, 1), (20, 20)),
    ("Mur pour la Paix", "attraction", (2, 2), (30, 30)),
    ("Musee des Egouts", "museum", (4, 5), (20, 60)),
    ("Galerie Rapp", "gallery", (4, 2), (-20, 60)),
    ("Square Rapp Viewpoint", "viewpoint", (4, 7), (20, 40)),
    ("Cafe Varenne", "cafe", (5, 6), (20, 60)),
    ("Musee Rodin Garden Shop", "attraction", (5, 4), (30, 20)),
    ("Dome des Invalides", "attraction", (6, 2), (25, 25)),
    ("Hotel de Babylone", "hotel", (6, 6), (-20, 60)),
    ("Bon Marche Gallery", "gallery", (7, 7), (20, 60)),
    ("Musee Maillol", "museum", (7, 5), (20, 20)),
    ("Pont Alexandre III Viewpoint", "viewpoint", (8, 1), (-25, 60)),
    ("Musee de l'Orangerie", "museum", (8, 2), (-25, 60)),
    ("Le Penseur Replica", "artwork", (8, 3), (-20, 40)),
    ("Cafe des Tuileries", "cafe", (8, 6), (-20, 60)),
    ("Pyramide du Louvre", "attraction", (8, 8), (-25, -30)),
    ("Grande Galerie de l'Evolution", "museum", (1, 8), (15, -25)),
    ("Menagerie du Jardin", "attraction", (0, 7), (20, 60)),
    ("Cafe de la Mosquee", "cafe", (2, 8), (20, -25)),
    ("Square Rene Viviani Viewpoint", "viewpoint", (3, 8), (25, -20)),
]

PARKS = [
    # name, (r, c) lower-left block corner, tags
    ("Parc du Champ de Mars", (1, 1), {"leisure": "park"}),
    ("Jardin Catherine Labouré", (6, 5), {"leisure": "garden"}),
    ("Square d'Ajaccio", (5, 2), {"leisure": "park"}),
    ("Pelouse des Invalides", (6, 1), {"landuse": "grass"}),
    ("Jardin des Plantes Grove", (0, 7), {"landuse": "forest"}),
    ("Jardin des Tuileries", (7, 6), {"leisure": "garden"}),
]


def build_city():
    city = City()
    for r in range(N):
        for c in range(N):
            tags = {}
            # Kerb ramps on a subset of intersections.
            if (r + c) % 3 == 0:
                tags = {"kerb": "lowered", "wheelchair": "yes"}
            elif (r * c) % 7 == 5:
                tags = {"highway": "crossing", "wheelchair": "designated"}
            city.node(grid_pos(r, c), tags, node_id=grid_id(r, c))

    # One way per block so street names change at the expected places and
    # sidewalk tags are spread along the street.
    for r, (name, tags) in enumerate(ROW_STREETS):
        for c in range(N - 1):
            t = dict(tags, name=name)
            # Rue de Sevres loses its sidewalk on the west half: not walkable.
            if r == 7 and c < 3:
                t = {"highway": "residential", "name": name}
            city.way([grid_id(r, c), grid_id(r, c + 1)], t)
    for c, (name, tags) in enumerate(COL_STREETS):
        for r in range(N - 1):
            city.way([grid_id(r, c), grid_id(r + 1, c)], dict(tags, name=name))

    # Two intermediate nodes inside a block turn one street into a polyline.
    mid_a = city.node(offset(grid_pos(3, 4), 40, 0))
    mid_b = city.node(offset(grid_pos(3, 4), 80, 0))
    city.way([grid_id(3, 4), mid_a, mid_b, grid_id(4, 4)],
             {"highway": "steps", "name": "Escalier Amelie"})

    # Non-walkable roads.
    m = [city.node(offset(grid_pos(8, c), 90, 0)) for c in range(0, N, 2)]
    city.way(m, {"highway": "motorway", "name": "Voie Georges Pompidou"})
    city.way([grid_id(3, 0), grid_id(4, 1)], {"highway": "residential", "name": "Rue Sans Trottoir"})
    city.way([grid_id(1, 6), grid_id(2, 7)], {"highway": "service", "foot": "no"})

    # Disconnected island, about 450 m east of the grid.
    island = [city.node(offset(grid_pos(4, 8), dn, 450 + de)) for dn, de in ((0, 0), (40, 30), (80, 0))]
    city.way(island, {"highway": "footway", "name": "Promenade de l'Ile"})

    # Trees lining Avenue Rapp and the Quai.
    for c in range(N - 1):
        city.node(offset(grid_pos(4, c), 6, 60), {"natural": "tree"})
        city.node(offset(grid_pos(8, c), -6, 30), {"natural": "tree"})
        city.node(offset(grid_pos(8, c), -6, 90), {"natural": "tree"})
    for r in range(N - 1):
        city.node(offset(grid_pos(r, 1), 60, 6), {"natural": "tree"})

    # Parks as closed rings spanning one block, inset 15 m from the streets.
    for name, (r, c), tags in PARKS:
        sw = offset(grid_pos(r, c), 15, 15)
        se = offset(grid_pos(r, c + 1), 15, -15)
        ne = offset(grid_pos(r + 1, c + 1), -15, -15)
        nw = offset(grid_pos(r + 1, c), -15, 15)
        ring = [city.node(p) for p in (sw, se, ne, nw)]
        city.way(ring + [ring[0]], dict(tags, name=name))

    for name, category, (r, c), (dn, de) in POIS:
        city.node(offset(grid_pos(r, c), dn, de), {"tourism": category, "name": name})
    city.node(offset(grid_pos(3, 3), 20, 60), {"tourism": "artwork"})  # unnamed
    city.node(offset(grid_pos(5, 0), 20, 40), {"tourism": "museum", "name": "Musee de l'Armee",
                                               "wheelchair": "yes"})
    # A POI far from every route.
    city.node(offset(grid_pos(4, 8), 0, 470), {"tourism": "viewpoint", "name": "Belvedere de l'Ile"})
    return city


def write_gazetteer(path):
    rows = [(name, *grid_pos(r, c)) for name, (r, c) in PLACES.items()]
    island = offset(grid_pos(4, 8), 40, 480)
    rows.append(("Ile Isolee", island[0], island[1]))
    rows.append(("Bois Lointain", 48.9000, 2.3500))
    rows.append(("Tour Montparnasse, Paris", 48.8421, 2.3219))
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("name,lat,lon\n")
        for name, lat, lon in rows:
            quoted = f'"{name}"' if "," in name else name
            f.write(f"{quoted},{lat:.7f},{lon:.7f}\n")


def write_air_quality(path):
    grid = {"48.85,2.29": 2, "48.85,2.30": 3, "48.86,2.29": 1, "48.86,2.30": 4}
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(grid, f, indent=2, sort_keys=True)
        f.write("\n")


# (id, text, source) for the passages the information queries target.
TARGETS = [
    ("p-eiffel-history", "The Eiffel Tower was built by Gustave Eiffel's company for the 1889 World's Fair. The wrought-iron Eiffel Tower is 330 metres tall and was the tallest man-made structure in the world until 1930."),
    ("p-eiffel-visit", "Visitors can climb the Eiffel Tower stairs to the second floor or take the lifts to the summit. Tickets for the Eiffel Tower summit sell out early in summer."),
    ("p-champ-de-mars", "The Champ de Mars is a large public green space stretching from the Eiffel Tower to the Ecole Militaire. The Champ de Mars was once a military parade ground and hosted several world fairs."),
    ("p-mur-paix", "The Mur pour la Paix is a glass and steel monument at the end of the Champ de Mars. The Mur pour la Paix carries the word peace written in 49 languages."),
    ("p-quai-branly", "The Musee du Quai Branly displays indigenous art from Africa, Asia, Oceania and the Americas. Its planted living wall makes the Musee du Quai Branly easy to recognise."),
    ("p-fontaine-mars", "The Fontaine de Mars is a Napoleonic fountain decorated with Hygieia giving drink to Mars. The Fontaine de Mars gives its name to a classic bistro beside it."),
    ("p-invalides", "Les Invalides is a complex of buildings founded by Louis XIV to house wounded soldiers. Napoleon's tomb lies beneath the golden Dome des Invalides."),
    ("p-armee", "The Musee de l'Armee holds one of the largest collections of arms and armour in the world. The Musee de l'Armee is housed in Les Invalides."),
    ("p-rodin", "The Rodin Museum occupies the Hotel Biron and its sculpture garden. The Rodin Museum shows The Thinker and The Gates of Hell among the roses. It is closed on Mondays."),
    ("p-orsay", "The Musee d'Orsay is housed in the former Gare d'Orsay, a Beaux-Arts railway station. The Musee d'Orsay holds the largest collection of impressionist paintings in the world."),
    ("p-orangerie", "The Musee de l'Orangerie displays Claude Monet's Water Lilies in two oval rooms. The Orangerie sits in the corner of the Tuileries garden."),
    ("p-concorde", "The Place de la Concorde is the largest square in Paris. The Luxor Obelisk, a gift from Egypt, stands at the centre of the Place de la Concorde."),
    ("p-louvre", "The Louvre is the most visited museum in the world and home to the Mona Lisa. The Louvre began as a fortress built by Philip II in the twelfth century."),
    ("p-pyramide", "The glass Pyramide du Louvre designed by I. M. Pei serves as the main entrance of the museum. The Pyramide du Louvre opened in 1989."),
    ("p-tuileries", "The Jardin des Tuileries lies between the Louvre and the Place de la Concorde. The Tuileries garden was created by Catherine de Medici in 1564."),
    ("p-notre-dame", "Notre Dame is a medieval Catholic cathedral on the Ile de la Cite. Notre Dame is celebrated for its flying buttresses, rose windows and gargoyles."),
    ("p-notre-dame-fire", "A fire in April 2019 destroyed the spire and most of the roof of Notre Dame. The cathedral of Notre Dame reopened to visitors in December 2024."),
    ("p-viviani", "The Square Rene Viviani offers a view of Notre Dame across the Seine. The Square Rene Viviani holds what is said to be the oldest tree in Paris, a locust planted in 1601."),
    ("p-jardin-plantes", "The Jardin des Plantes is the main botanical garden of France, founded in 1635 as a royal garden of medicinal plants. The Jardin des Plantes hosts greenhouses and a rose garden."),
    ("p-menagerie", "The Menagerie du Jardin des Plantes is one of the oldest zoos in the world. The Menagerie shelters red pandas, orangutans and snow leopards."),
    ("p-evolution", "The Grande Galerie de l'Evolution presents a parade of stuffed animals under a glass roof. The Grande Galerie de l'Evolution belongs to the natural history museum."),
    ("p-mosquee", "The Cafe de la Mosquee serves mint tea and pastries in the courtyard of the Grand Mosque of Paris. The Cafe de la Mosquee faces the Jardin des Plantes."),
    ("p-pantheon", "The Pantheon is a neoclassical mausoleum where Voltaire, Rousseau, Victor Hugo and Marie Curie are buried. Foucault's pendulum swings beneath the Pantheon dome."),
    ("p-maillol", "The Musee Maillol presents sculptures by Aristide Maillol and temporary exhibitions. The Musee Maillol stands behind the Fontaine des Quatre-Saisons."),
    ("p-bon-marche", "Le Bon Marche is one of the first department stores in the world. The Bon Marche Gallery hosts contemporary art installations each winter."),
    ("p-egouts", "The Musee des Egouts lets visitors explore a section of the Paris sewer network. The Musee des Egouts explains how Belgrand designed the sewers in the nineteenth century."),
    ("p-alexandre", "The Pont Alexandre III is an ornate arch bridge with gilded statues and art nouveau lamps. The Pont Alexandre III Viewpoint looks toward the Grand Palais."),
    ("p-cler", "Rue Cler is a pedestrian market street lined with cheese shops, bakeries and fruit stalls. Rue Cler is a favourite for picnic supplies."),
    ("p-cafe-marche", "The Cafe du Marche on Rue Cler serves simple French dishes at fair prices. The Cafe du Marche terrace is busy at lunchtime."),
    ("p-duquesne", "Hotel Duquesne is a small hotel near the Ecole Militaire with views of the Eiffel Tower. Hotel Duquesne rooms were renovated in 2022."),
]

DISTRACTOR_SUBJECTS = [
    ("Montmartre", "hill in the north of the city known for artists and the Sacre-Coeur basilica"),
    ("Canal Saint-Martin", "canal lined with iron footbridges and plane trees in the tenth arrondissement"),
    ("Marais", "historic district with mansions, narrow lanes and falafel shops"),
    ("Opera Garnier", "opulent opera house built for Napoleon III with a ceiling painted by Chagall"),
    ("Sainte-Chapelle", "royal chapel famous for its fifteen stained glass windows"),
    ("Luxembourg Garden", "formal garden around the Senate palace with a pond for toy sailboats"),
    ("Pere Lachaise", "cemetery where Chopin, Oscar Wilde and Jim Morrison are buried"),
    ("Arc de Triomphe", "triumphal arch at the top of the avenue honouring the armies of France"),
    ("Moulin Rouge", "cabaret in Pigalle famous for the cancan"),
    ("Centre Pompidou", "modern art centre with exposed pipes and escalators on its facade"),
    ("Parc des Buttes-Chaumont", "hilly park with a temple perched on a cliff above a lake"),
    ("Catacombs", "underground ossuary holding the remains of millions of Parisians"),
    ("Bercy Village", "former wine warehouses turned into shops and restaurants"),
    ("La Defense", "business district with the Grande Arche and glass towers"),
    ("Versailles", "royal palace with the Hall of Mirrors and vast formal gardens"),
    ("Belleville", "multicultural neighbourhood with street art and views over the city"),
    ("Saint-Germain-des-Pres", "literary quarter with historic cafes and an ancient abbey church"),
    ("Place des Vosges", "oldest planned square in the city surrounded by red brick houses"),
    ("Galeries Lafayette", "department store crowned by a neo-Byzantine glass dome"),
    ("Philharmonie", "concert hall in the Parc de la Villette with a faceted metal shell"),
    ("Palais Royal", "palace courtyard with striped columns by Daniel Buren"),
    ("Shakespeare and Company", "English-language bookshop on the Left Bank"),
    ("Batignolles", "village-like district with an organic market and a modern park"),
    ("Bibliotheque Nationale", "national library with four towers shaped like open books"),
    ("Parc Monceau", "English-style park with follies and a colonnade"),
    ("Stade de France", "national stadium in Saint-Denis built for the 1998 World Cup"),
    ("Ile Saint-Louis", "small island known for ice cream parlours and quiet quays"),
    ("Promenade Plantee", "elevated park built on a disused railway viaduct"),
    ("Metro", "underground railway with art nouveau entrances designed by Hector Guimard"),
    ("Velib", "bicycle sharing system with docking stations across the city"),
    ("Boulangerie", "bakery where the daily baguette is bought fresh each morning"),
    ("Crepe stands", "street food stalls serving sweet and savoury pancakes"),
    ("Bateaux Mouches", "sightseeing boats cruising the Seine"),
    ("Paris Plages", "summer beaches set up along the river banks"),
    ("Fete de la Musique", "music festival held every year on the summer solstice"),
]


def write_corpus(path):
    passages = [{"id": pid, "text": text, "source": "fixture"} for pid, text in TARGETS]
    for i, (name, desc) in enumerate(DISTRACTOR_SUBJECTS):
        slug = name.lower().replace(" ", "-").replace("'", "")
        passages.append({"id": f"d-{slug}-a",
                         "text": f"About {name}: {desc}. Locals recommend visiting {name} early in the day."})
        passages.append({"id": f"d-{slug}-b",
                         "text": f"Guidebooks list {name} under this entry: {desc}. Opening hours for {name} vary by season."})
    assert len(passages) == 100, len(passages)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for p in passages:
            f.write(json.dumps(p, ensure_ascii=False) + "\n")


# Ten spatial requests, each followed by three information follow-ups.
EVAL = [
    ("Suggest a walkable route from the Eiffel Tower to the Louvre with lots of green areas.",
     "Eiffel Tower", "Louvre", [],
     [("Tell me more about the Eiffel Tower.", "p-eiffel-history"),
      ("When was the Pyramide du Louvre opened?", "p-pyramide"),
      ("What paintings hang in the Musee de l'Orangerie?", "p-orangerie")]),
    ("How do I get to Notre Dame from the Champ de Mars?",
     "Champ de Mars", "Notre Dame", [],
     [("What is written on the Mur pour la Paix?", "p-mur-paix"),
      ("Tell me about the fire at Notre Dame.", "p-notre-dame-fire"),
      ("What is the Fontaine de Mars?", "p-fontaine-mars")]),
    ("I want to walk from Invalides to the Jardin des Plantes passing by museums.",
     "Invalides", "Jardin des Plantes", [],
     [("Whose tomb lies under the Dome des Invalides?", "p-invalides"),
      ("What animals live in the Menagerie du Jardin des Plantes?", "p-menagerie"),
      ("What can I see in the Grande Galerie de l'Evolution?", "p-evolution")]),
    ("Give me directions from Place de la Concorde to the Musee d'Orsay.",
     "Place de la Concorde", "Musee d'Orsay", ["Le Penseur Replica", "Musee de l'Orangerie"],
     [("What stands in the centre of the Place de la Concorde?", "p-concorde"),
      ("Which building housed the Musee d'Orsay before it became a museum?", "p-orsay"),
      ("What does the Pont Alexandre III Viewpoint look toward?", "p-alexandre")]),
    ("Find a wheelchair accessible route from the Pantheon to the Eiffel Tower.",
     "Pantheon", "Eiffel Tower", [],
     [("Who is buried in the Pantheon?", "p-pantheon"),
      ("Can I climb the Eiffel Tower stairs to the summit?", "p-eiffel-visit"),
      ("Is Hotel Duquesne close to the Ecole Militaire?", "p-duquesne")]),
    ("Plan a stroll from the Rodin Museum to the Louvre along quiet streets with clean air.",
     "Rodin Museum", "Louvre", [],
     [("Is the Rodin Museum open on Mondays?", "p-rodin"),
      ("What is the most famous painting in the Louvre?", "p-louvre"),
      ("Who created the Jardin des Tuileries?", "p-tuileries")]),
    ("What is the best walking route from the Musee d'Orsay to the Pantheon?",
     "Musee d'Orsay", "Pantheon", [],
     [("Which sculptor is shown at the Musee Maillol?", "p-maillol"),
      ("What art installations does the Bon Marche Gallery host?", "p-bon-marche"),
      ("Where does the Cafe de la Mosquee serve mint tea?", "p-mosquee")]),
    ("Take me from the Jardin des Plantes to Notre Dame.",
     "Jardin des Plantes", "Notre Dame", ["Square Rene Viviani Viewpoint"],
     [("When was the Jardin des Plantes founded?", "p-jardin-plantes"),
      ("What is the oldest tree at the Square Rene Viviani?", "p-viviani"),
      ("What is Notre Dame famous for?", "p-notre-dame")]),
    ("Show me a walk from Notre Dame to the Champ de Mars with good sidewalks.",
     "Notre Dame", "Champ de Mars", [],
     [("What does the Musee des Egouts explain about the sewers?", "p-egouts"),
      ("What shops line Rue Cler?", "p-cler"),
      ("What kind of food does the Cafe du Marche serve?", "p-cafe-marche")]),
    ("I would like to go from the Louvre to Invalides, preferably past a cafe.",
     "Louvre", "Invalides", [],
     [("What collection does the Musee de l'Armee hold?", "p-armee"),
      ("Tell me more about the Musee du Quai Branly.", "p-quai-branly"),
      ("What was the Champ de Mars used for in the past?", "p-champ-de-mars")]),
]


def write_eval(path):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for query, origin, dest, pois, follow_ups in EVAL:
            rec = {"query": query, "kind": "spatial", "origin": origin, "destination": dest}
            if pois:
                rec["expected_pois"] = pois
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
            for q, pid in follow_ups:
                f.write(json.dumps({"query": q, "kind": "information", "expected_passage_id": pid},
                                   ensure_ascii=False) + "\n")


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else OUT
    os.makedirs(out, exist_ok=True)
    build_city().write_osm(os.path.join(out, "map.osm"))
    write_gazetteer(os.path.join(out, "gazetteer.csv"))
    write_air_quality(os.path.join(out, "air_quality.json"))
    write_corpus(os.path.join(out, "corpus.jsonl"))
    write_eval(os.path.join(out, "eval.jsonl"))


if __name__ == "__main__":
    main()
