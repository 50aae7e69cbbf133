#include "dangerlex/fixtures.hpp"

#include <fstream>
#include <sstream>

#include "dangerlex/error.hpp"

namespace dangerlex::fixtures {
namespace {

using DT = DangerType;

struct Paragraph {
  const char* text;
  UnitLabel first;   // ann1
  UnitLabel second;  // ann2
};

UnitLabel none(bool fear = false) { return {{}, fear}; }
UnitLabel of(DT t, bool fear = false) { return {{t}, fear}; }

struct Doc {
  const char* id;
  std::vector<Paragraph> paragraphs;
};

const std::vector<Doc>& docs() {
  static const std::vector<Doc> d = {
      {"seefahrt",
       {
           {"Die Fregatte lag ruhig im Hafen von Kiel. Kapitän Hansen prüfte die Ladung und sprach mit dem "
            "Zollbeamten über das Wetter der kommenden Tage.",
            none(), none()},
           {"Am Abend saßen die Matrosen beisammen, sangen alte Lieder und tranken Tee mit Rum. Niemand dachte an "
            "die lange Reise.",
            none(), none()},
           {"Gegen Mitternacht brach der Sturm los. Der Wind heulte in den Wanten, Blitze zuckten über den Himmel, "
            "und haushohe Wellen schlugen über das Deck. Der Donner übertönte jeden Befehl, und der Regen peitschte "
            "den Männern ins Gesicht.",
            of(DT::Natural), of(DT::Natural, true)},
           {"Der junge Schiffsjunge Peter lag in seiner Koje und zitterte vor Angst. Er hatte noch nie eine solche "
            "Nacht erlebt und fürchtete sich vor dem Morgen.",
            none(true), none(true)},
           {"Im Laderaum lauerte ein fremder Mann. Er packte den Steuermann von hinten, zog ein Messer und stieß "
            "zu. Die Klinge traf den Arm, Blut tropfte auf die Planken, doch der Steuermann schlug den Angreifer "
            "nieder.",
            of(DT::Ambush), of(DT::Duel)},
           {"Am nächsten Morgen war die See wieder glatt. Die Sonne schien, und die Männer flickten die "
            "zerrissenen Segel.",
            none(), none()},
           {"Hansen ließ den Gefangenen in die Kammer sperren. Über den Mord an dem alten Koch, der vor Jahren "
            "geschehen war, wurde an Bord nur geflüstert.",
            none(), none()},
           {"Die Reise führte sie weiter nach Süden, vorbei an fremden Küsten und kleinen Fischerdörfern.", none(),
            none()},
           {"Plötzlich schlug Rauch aus der Luke. Im Pulverraum war ein Feuer ausgebrochen, Flammen leckten an den "
            "Fässern, und jeden Augenblick konnte die Ladung explodieren. Die Männer versuchten verzweifelt, den "
            "Brand zu löschen.",
            of(DT::Natural, true), of(DT::Natural, true)},
           {"Als sie endlich den Hafen erreichten, dankte Hansen seiner Mannschaft. Die Fregatte wurde im Dock "
            "repariert.",
            none(), none()},
       }},
      {"waldnovelle",
       {
           {"Die Gräfin wohnte in einem stillen Schloss am Rande des Waldes. Sie las gern und empfing selten "
            "Besuch.",
            none(), none()},
           {"Eines Tages kam ein Brief von ihrem Vetter, der sie zu einem Ball in die Stadt einlud.", none(),
            none()},
           {"Auf dem Heimweg überfielen maskierte Reiter die Kutsche. Sie zerrten die Gräfin aus dem Wagen, "
            "fesselten ihre Hände und verschleppten sie in einen alten Turm. Dort hielten sie ihre Gefangene fest "
            "und forderten Lösegeld. Die Gräfin zitterte vor Angst.",
            of(DT::Abduction, true), of(DT::Abduction, true)},
           {"Im Turm war es kalt und dunkel. Die Gräfin dachte an ihre Kindheit und an den Garten ihrer Mutter.",
            none(), none()},
           {"Der junge Förster, der sie heimlich liebte, spürte einen Sturm der Gefühle in seiner Brust.", none(),
            none()},
           {"Der Förster forderte den Anführer der Reiter zum Duell. Im Morgengrauen standen sich die Gegner mit "
            "gezogenem Degen gegenüber. Der Säbel des Anführers blitzte, doch der Förster parierte und führte "
            "seine Klinge mit sicherer Hand.",
            of(DT::Duel), of(DT::Duel)},
           {"Die Gräfin hörte die Klingen klirren und bebte vor Furcht. Schrecklich war der Gedanke, dass er "
            "fallen könnte.",
            of(DT::Duel, true), none(true)},
           {"In der Nacht erschien eine bleiche Gestalt im Burghof. Ein Grauen erfasste alle. Der Anführer zog "
            "eine Pistole und schoss, doch die Kugel fuhr durch den Geist hindurch. Da griff die Gestalt nach "
            "seiner Kehle und würgte ihn, bis er röchelnd zu Boden sank.",
            of(DT::Supernatural, true), of(DT::Supernatural, true)},
           {"Am Morgen fand man den Anführer tot im Hof. Die Dienerschaft sprach von einem Mord, doch niemand "
            "wusste Genaueres.",
            none(), none()},
           {"Die Gräfin kehrte auf ihr Schloss zurück und heiratete im Frühling den Förster.", none(), none()},
       }},
  };
  return d;
}

constexpr const char* kListHeader =
    "# Illustrative reconstruction for the bundled fixtures; not a published list.\n";

const char* kAbduction =
    "entführen\nentführung\nentführer\ngefangen\nfesseln\nverschleppen\ngeisel\nlösegeld\nkerker\nsperren\n"
    "überfallen\nzerren\nentfliehen\nfliehen\n";
const char* kFire =
    "feuer\nbrennen\nbrennend\nflamme\nrauch\nbrand\nexplosion\nexplodieren\nzünden\nglut\nlöschen\nfunke\n";
const char* kViolence =
    "messer\nklinge\nblut\nschlagen\nstoßen\nwunde\nopfer\nwürgen\nerwürgen\ntöten\nmord\nmorden\nermorden\n"
    "umbringen\npacken\nwaffe\npistole\nschießen\nröcheln\nzuschlagen\n";
const char* kWar = "kampf\nkämpfen\nfeind\nkrieg\nsoldat\nkanone\ngewehr\nschlacht\nangriff\nsieger\nstellung\n"
                   "fregatte\nkugel\n";
const char* kStorm = "sturm\nwind\norkan\nwelle\ngewitter\nblitz\ndonner\nregen\nregnen\nhagel\nbö\nsturmwind\n"
                     "brandung\nkentern\nsinken\nunwetter\n";
const char* kDuel = "duell\ndegen\nsäbel\nsekundant\ngegenüberstehen\ngegenüber\ngegner\nfechten\nkugel\nforderung\n"
                    "klinge\npistole\n";
const char* kFear = "angst\nfurcht\npanik\nzittern\nschrecken\nerschrecken\nfürchten\nschrecklich\ngrauen\n"
                    "entsetzen\nbeben\nschaudern\ngänsehaut\nangstschweiß\nängstlich\nbedrohen\nnervös\n"
                    "ohnmächtig\nschreck\nfurchtbar\nunheimlich\n";

constexpr const char* kLemmas =
    "# surface\tlemma\n"
    "blitze\tblitz\n"
    "wellen\twelle\n"
    "schlugen\tschlagen\n"
    "schlug\tschlagen\n"
    "heulte\theulen\n"
    "zitterte\tzittern\n"
    "fürchtete\tfürchten\n"
    "packte\tpacken\n"
    "stieß\tstoßen\n"
    "gefangenen\tgefangen\n"
    "gefangene\tgefangen\n"
    "flammen\tflamme\n"
    "überfielen\tüberfallen\n"
    "zerrten\tzerren\n"
    "fesselten\tfesseln\n"
    "verschleppten\tverschleppen\n"
    "klingen\tklinge\n"
    "bebte\tbeben\n"
    "schoss\tschießen\n"
    "würgte\twürgen\n"
    "röchelnd\tröcheln\n"
    "sank\tsinken\n"
    "stürme\tsturm\n"
    "tobte\ttoben\n"
    "tobten\ttoben\n"
    "blitzte\tblitzen\n"
    "standen\tstehen\n"
    "forderte\tfordern\n"
    "forderten\tfordern\n"
    "messers\tmesser\n"
    "wunden\twunde\n";

constexpr const char* kVectors =
    "12 4\n"
    "sturm 1 0 0 0\n"
    "orkan 0.95 0.1 0 0\n"
    "Stürme 0.97 0.05 0 0\n"
    "unwetter 0.9 0.2 0 0.1\n"
    "messer 0 1 0 0\n"
    "dolch 0.05 0.95 0 0\n"
    "klinge 0 0.9 0.1 0\n"
    "angst 0 0 1 0\n"
    "furcht 0.05 0 0.95 0\n"
    "panik 0 0.1 0.9 0\n"
    "haus 0 0 0 1\n"
    "garten 0.1 0 0 0.9\n";

constexpr const char* kDump =
    "/r/Synonym\t/c/de/angst\t/c/de/furcht\n"
    "/r/IsA\t/c/de/panik\t/c/de/angst\n"
    "/r/IsA\t/c/de/angst\t/c/de/gefühl\n"
    "/r/Synonym\t/c/de/sturm\t/c/de/orkan/n\n"
    "/r/IsA\t/c/de/blanke_klinge\t/c/de/klinge\n"
    "/r/IsA\t/c/de/dolch\t/c/de/messer\n"
    "/r/Synonym\t/c/de/unwetter\t/c/de/gewitter\n"
    "/r/Synonym\t/c/de/angst\t/c/en/fear\n"
    "/r/RelatedTo\t/c/de/feuer\t/c/de/hitze\n"
    "/r/IsA\t/c/de/säbel\t/c/de/waffe\n"
    "/a/[/r/IsA/,/c/de/todesangst/,/c/de/angst/]\t/r/IsA\t/c/de/todesangst\t/c/de/angst\t{\"weight\": 1.0}\n";

std::string raw_text(const Doc& d) {
  std::string out;
  for (const auto& p : d.paragraphs) {
    if (!out.empty()) out += "\n\n";
    out += p.text;
  }
  return out + "\n";
}

}  // namespace

Corpus corpus() {
  Corpus c;
  for (const auto& d : docs()) {
    Document doc;
    doc.doc_id = d.id;
    doc.title = d.id;
    for (const auto& p : d.paragraphs) {
      ParagraphUnit u{d.id, doc.units.size(), p.text, {{"ann1", p.first}, {"ann2", p.second}}};
      doc.units.push_back(std::move(u));
    }
    for (const auto& u : doc.units) doc.raw_text += (doc.raw_text.empty() ? "" : "\n\n") + u.text;
    c.documents.push_back(std::move(doc));
  }
  return c;
}

std::vector<UnitKey> planted_units() {
  return {{"seefahrt", 2}, {"seefahrt", 4}, {"seefahrt", 8},
          {"waldnovelle", 2}, {"waldnovelle", 5}, {"waldnovelle", 7}};
}

std::vector<File> files(const std::filesystem::path& root) {
  std::vector<File> out;
  std::ostringstream jsonl;
  write_corpus(jsonl, corpus());
  out.push_back({"corpus.jsonl", jsonl.str()});
  for (const auto& d : docs()) out.push_back({std::string("raw/") + d.id + ".txt", raw_text(d)});

  const std::pair<const char*, const char*> lists[] = {{"Abduction", kAbduction}, {"Fire", kFire},
                                                       {"Violence", kViolence},   {"War", kWar},
                                                       {"Storm", kStorm},         {"Duel", kDuel}};
  for (const auto& [name, words] : lists)
    out.push_back({std::string("lists/danger/") + name + ".base.txt", std::string(kListHeader) + words});
  out.push_back({"lists/Fear.base.txt", std::string(kListHeader) + kFear});
  out.push_back({"lemmas.tsv", kLemmas});
  out.push_back({"vectors.txt", kVectors});
  out.push_back({"conceptnet.tsv", kDump});

  std::ostringstream manifest;
  const auto c = corpus();
  manifest << "documents=" << c.documents.size() << "\nunits=" << c.unit_count() << "\nplanted=";
  const auto planted = planted_units();
  for (std::size_t i = 0; i < planted.size(); ++i)
    manifest << (i ? "," : "") << planted[i].first << '#' << planted[i].second;
  manifest << '\n';
  out.push_back({"manifest.txt", manifest.str()});

  const auto abs = std::filesystem::absolute(root).lexically_normal();
  const auto p = [&](const char* rel) { return "\"" + (abs / rel).generic_string() + "\""; };
  std::ostringstream ini;
  ini << "# dangerlex pipeline configuration for the bundled fixtures\n"
      << "corpus=" << p("corpus.jsonl") << '\n'
      << "danger-list=[";
  for (std::size_t i = 0; i < std::size(lists); ++i)
    ini << (i ? "," : "") << p((std::string("lists/danger/") + lists[i].first + ".base.txt").c_str());
  ini << "]\n"
      << "fear-list=" << p("lists/Fear.base.txt") << '\n'
      << "lemmas=" << p("lemmas.tsv") << '\n'
      << "expand=\"none\"\n"
      << "scope=\"global\"\n"
      << "policy=\"first-annotator\"\n"
      << "out=" << p("out") << '\n';
  out.push_back({"pipeline.ini", ini.str()});
  return out;
}

std::vector<std::filesystem::path> write(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> written;
  for (const auto& f : files(root)) {
    const auto target = root / f.relative_path;
    std::filesystem::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + target.string());
    out << f.content;
    written.push_back(target);
  }
  return written;
}

}  // namespace dangerlex::fixtures
