#pragma once

#include <array>
#include <string_view>

// Published result rows used as fixed test vectors.
namespace dangerlex::testdata {

struct PrfRow {
  std::string_view list;
  std::string_view task;
  double precision, recall, f1;
};

inline constexpr std::array kPrfRows{
    PrfRow{"Base", "danger", 40.8, 55.7, 47.1},
    PrfRow{"Base", "fear", 44.5, 52.7, 48.3},
    PrfRow{"Embeddings", "danger", 38.5, 64.8, 48.3},
    PrfRow{"Embeddings", "fear", 46.3, 66.7, 54.6},
    PrfRow{"ConceptNet", "danger", 30.3, 83.0, 44.4},
    PrfRow{"ConceptNet", "fear", 35.4, 55.9, 43.3},
};

struct WordRatioRow {
  std::string_view word;
  unsigned tp, fp;
  std::string_view ratio;
};

// Danger words: the main table and its continuation (69 rows).
inline constexpr std::array kDangerWordRows{
    WordRatioRow{"würgen", 2, 0, "1.00"},
    WordRatioRow{"donnern", 2, 0, "1.00"},
    WordRatioRow{"brennend", 2, 0, "1.00"},
    WordRatioRow{"Bö", 3, 0, "1.00"},
    WordRatioRow{"rammen", 2, 0, "1.00"},
    WordRatioRow{"röcheln", 2, 0, "1.00"},
    WordRatioRow{"zuschlagen", 3, 0, "1.00"},
    WordRatioRow{"zerren", 4, 0, "1.00"},
    WordRatioRow{"Hagel", 2, 0, "1.00"},
    WordRatioRow{"Kampf", 6, 0, "1.00"},
    WordRatioRow{"Donner", 2, 0, "1.00"},
    WordRatioRow{"schießen", 8, 0, "1.00"},
    WordRatioRow{"verschlingen", 2, 0, "1.00"},
    WordRatioRow{"Sieger", 4, 0, "1.00"},
    WordRatioRow{"explodieren", 2, 0, "1.00"},
    WordRatioRow{"erwürgen", 2, 0, "1.00"},
    WordRatioRow{"Sturmwind", 2, 0, "1.00"},
    WordRatioRow{"entfliehen", 2, 0, "1.00"},
    WordRatioRow{"entstellt", 2, 0, "1.00"},
    WordRatioRow{"gefangen", 2, 0, "1.00"},
    WordRatioRow{"Sturm", 12, 1, "0.92"},
    WordRatioRow{"Fregatte", 10, 1, "0.91"},
    WordRatioRow{"Klinge", 18, 2, "0.90"},
    WordRatioRow{"Messer", 30, 4, "0.88"},
    WordRatioRow{"Blitz", 6, 1, "0.86"},
    WordRatioRow{"fliehen", 6, 1, "0.86"},
    WordRatioRow{"Wind", 22, 4, "0.85"},
    WordRatioRow{"Feuer", 10, 2, "0.83"},
    WordRatioRow{"packen", 4, 1, "0.80"},
    WordRatioRow{"zünden", 8, 2, "0.80"},
    WordRatioRow{"stoßen", 10, 3, "0.77"},
    WordRatioRow{"Waffe", 6, 2, "0.75"},
    WordRatioRow{"Opfer", 21, 7, "0.75"},
    WordRatioRow{"schlagen", 27, 12, "0.69"},
    WordRatioRow{"umbringen", 2, 1, "0.67"},
    WordRatioRow{"wild", 8, 4, "0.67"},
    WordRatioRow{"gegenüberstehen", 2, 1, "0.67"},
    WordRatioRow{"brennen", 6, 3, "0.67"},
    WordRatioRow{"schleudern", 6, 3, "0.67"},
    WordRatioRow{"Explosion", 2, 1, "0.67"},
    WordRatioRow{"Blut", 18, 12, "0.60"},
    WordRatioRow{"Wunde", 6, 5, "0.55"},
    WordRatioRow{"gegenüber", 4, 4, "0.50"},
    WordRatioRow{"Welle", 2, 3, "0.40"},
    WordRatioRow{"Regen", 2, 5, "0.29"},
    WordRatioRow{"töten", 2, 5, "0.29"},
    WordRatioRow{"blutend", 0, 1, "0.00"},
    WordRatioRow{"Stellung", 0, 1, "0.00"},
    WordRatioRow{"Streit", 0, 1, "0.00"},
    WordRatioRow{"beißen", 0, 1, "0.00"},
    WordRatioRow{"graben", 0, 1, "0.00"},
    WordRatioRow{"blutig", 0, 1, "0.00"},
    WordRatioRow{"ermorden", 0, 2, "0.00"},
    WordRatioRow{"flammen", 0, 1, "0.00"},
    WordRatioRow{"Pistole", 0, 1, "0.00"},
    WordRatioRow{"kämpfen", 0, 1, "0.00"},
    WordRatioRow{"Prasseln", 0, 1, "0.00"},
    WordRatioRow{"Feind", 0, 1, "0.00"},
    WordRatioRow{"Mord", 0, 9, "0.00"},
    WordRatioRow{"Gewitter", 0, 3, "0.00"},
    WordRatioRow{"Gewalt", 0, 2, "0.00"},
    WordRatioRow{"löschen", 0, 1, "0.00"},
    WordRatioRow{"morden", 0, 2, "0.00"},
    WordRatioRow{"durchbohren", 0, 1, "0.00"},
    WordRatioRow{"vergewaltigen", 0, 1, "0.00"},
    WordRatioRow{"regnen", 0, 3, "0.00"},
    WordRatioRow{"prasseln", 0, 1, "0.00"},
    WordRatioRow{"sperren", 0, 1, "0.00"},
    WordRatioRow{"überfallen", 0, 1, "0.00"},
};

// Fear words (41 rows).
inline constexpr std::array kFearWordRows{
    WordRatioRow{"bedrohen", 5, 0, "1.00"},
    WordRatioRow{"widerlich", 1, 0, "1.00"},
    WordRatioRow{"ängstlich", 2, 0, "1.00"},
    WordRatioRow{"nervös", 1, 0, "1.00"},
    WordRatioRow{"höllisch", 1, 0, "1.00"},
    WordRatioRow{"Bedrohung", 1, 0, "1.00"},
    WordRatioRow{"verwirren", 1, 0, "1.00"},
    WordRatioRow{"erbärmlich", 1, 0, "1.00"},
    WordRatioRow{"Angstschweiß", 1, 0, "1.00"},
    WordRatioRow{"Panik", 1, 0, "1.00"},
    WordRatioRow{"zittern", 9, 1, "0.90"},
    WordRatioRow{"Furcht", 6, 1, "0.86"},
    WordRatioRow{"Angst", 20, 4, "0.83"},
    WordRatioRow{"schrecken", 3, 1, "0.75"},
    WordRatioRow{"Zittern", 5, 2, "0.71"},
    WordRatioRow{"ohnmächtig", 2, 1, "0.67"},
    WordRatioRow{"Schrecken", 3, 2, "0.60"},
    WordRatioRow{"erschrecken", 3, 3, "0.50"},
    WordRatioRow{"fürchten", 2, 2, "0.50"},
    WordRatioRow{"schrecklich", 15, 15, "0.50"},
    WordRatioRow{"Gänsehaut", 1, 1, "0.50"},
    WordRatioRow{"Schreck", 2, 2, "0.50"},
    WordRatioRow{"furchtbar", 3, 5, "0.38"},
    WordRatioRow{"gefährlich", 2, 4, "0.33"},
    WordRatioRow{"leiden", 2, 5, "0.29"},
    WordRatioRow{"Gefahr", 3, 9, "0.25"},
    WordRatioRow{"schlimm", 4, 13, "0.24"},
    WordRatioRow{"lähmen", 0, 1, "0.00"},
    WordRatioRow{"hoffnungslos", 0, 1, "0.00"},
    WordRatioRow{"grässlich", 0, 1, "0.00"},
    WordRatioRow{"schauerlich", 0, 1, "0.00"},
    WordRatioRow{"schocken", 0, 1, "0.00"},
    WordRatioRow{"fürchterlich", 0, 3, "0.00"},
    WordRatioRow{"wehrlos", 0, 1, "0.00"},
    WordRatioRow{"erschreckt", 0, 1, "0.00"},
    WordRatioRow{"unheimlich", 0, 4, "0.00"},
    WordRatioRow{"besorgt", 0, 1, "0.00"},
    WordRatioRow{"bedrohlich", 0, 1, "0.00"},
    WordRatioRow{"Leiden", 0, 1, "0.00"},
    WordRatioRow{"schwitzen", 0, 1, "0.00"},
    WordRatioRow{"überwältigen", 0, 1, "0.00"},
};

}  // namespace dangerlex::testdata
