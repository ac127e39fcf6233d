// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include "crisda/lang_id.hpp"

// Reference prose for the built-in language profiles (en, es, it, tl).
// Plain disaster-and-daily-life text written for this project; profiles are
// derived from it at first use via LanguageProfile::from_text, the same path
// user-supplied reference text goes through.

namespace crisda::detail {

inline constexpr const char* kRefEn =
    "The storm moved across the coast during the night and people stayed in "
    "their homes. Emergency teams worked through the morning to clear the "
    "roads and restore power to the town. Many families needed water, food, "
    "and shelter after the flood damaged their houses. Volunteers from nearby "
    "cities arrived with supplies and helped the injured. The school opened "
    "its doors as a temporary shelter for those who had lost everything. "
    "Officials asked residents to avoid the river because the water level was "
    "still rising. Hospitals treated dozens of patients and doctors said most "
    "of them would recover soon. The government promised money to rebuild the "
    "bridges and repair the damaged buildings. Farmers reported that their "
    "fields were under water and that the harvest was lost. Weather services "
    "expect more rain this week, so the situation remains dangerous. People "
    "shared information about missing persons and safe places to stay during "
    "the emergency. The church collected clothes and blankets for the "
    "affected families. Children returned to their classes after two weeks "
    "when the schools were finally cleaned. Neighbors helped each other "
    "repair roofs and remove fallen trees from the streets. The mayor thanked "
    "everyone who worked through those difficult days and nights.";

inline constexpr const char* kRefEs =
    "El terremoto golpeó la ciudad durante la noche y muchas personas "
    "quedaron sin casa. Los equipos de rescate trabajaron toda la mañana para "
    "despejar las calles y restablecer la electricidad. Muchas familias "
    "necesitaban agua, comida y refugio después de que el temblor dañara sus "
    "casas. Los voluntarios de las ciudades cercanas llegaron con ayuda y "
    "atendieron a los heridos. La escuela abrió sus puertas como refugio "
    "temporal para quienes habían perdido todo. Las autoridades pidieron a "
    "los vecinos evitar el río porque el nivel del agua seguía subiendo. Los "
    "hospitales atendieron a decenas de pacientes y los médicos dijeron que "
    "la mayoría se recuperará pronto. El gobierno prometió dinero para "
    "reconstruir los puentes y reparar los edificios dañados. Los campesinos "
    "informaron que sus campos estaban bajo el agua y que la cosecha se había "
    "perdido. Según los pronósticos lloverá otra vez esta semana, así que la "
    "situación sigue siendo peligrosa. La gente compartió información sobre "
    "los desaparecidos y los lugares seguros. La iglesia recogió ropa y "
    "mantas para las familias afectadas. Los niños volvieron a la escuela "
    "después de dos semanas cuando los edificios quedaron limpios. Los "
    "vecinos se ayudaron a reparar los techos y a quitar los árboles caídos "
    "de las calles. El alcalde agradeció a todos los que trabajaron durante "
    "esos días difíciles.";

inline constexpr const char* kRefIt =
    "Il terremoto ha colpito la città durante la notte e molte persone sono "
    "rimaste senza casa. Le squadre di soccorso hanno lavorato tutta la "
    "mattina per liberare le strade e riportare la corrente elettrica. Molte "
    "famiglie avevano bisogno di acqua, cibo e riparo dopo che la scossa ha "
    "danneggiato le loro case. I volontari delle città vicine sono arrivati "
    "con aiuti e hanno assistito i feriti. La scuola ha aperto le porte come "
    "rifugio temporaneo per chi aveva perso tutto. Le autorità hanno chiesto "
    "ai cittadini di evitare il fiume perché il livello dell'acqua "
    "continuava a salire. Gli ospedali hanno curato decine di pazienti e i "
    "medici hanno detto che la maggior parte guarirà presto. Il governo ha "
    "promesso fondi per ricostruire i ponti e riparare gli edifici "
    "danneggiati. I contadini hanno riferito che i campi erano sott'acqua e "
    "che il raccolto era perduto. Secondo le previsioni pioverà ancora questa "
    "settimana, quindi la situazione resta pericolosa. Le persone hanno "
    "condiviso informazioni sui dispersi e sui luoghi sicuri. La chiesa ha "
    "raccolto vestiti e coperte per le famiglie colpite. I bambini sono "
    "tornati a scuola dopo due settimane quando gli edifici sono stati "
    "puliti. I vicini si sono aiutati a riparare i tetti e a rimuovere gli "
    "alberi caduti dalle strade. Il sindaco ha ringraziato tutti quelli che "
    "hanno lavorato in quei giorni difficili.";

inline constexpr const char* kRefTl =
    "Ang lindol ay tumama sa lungsod noong gabi at maraming tao ang nawalan "
    "ng bahay. Ang mga tagapagligtas ay nagtrabaho buong umaga upang linisin "
    "ang mga kalsada at ibalik ang kuryente. Maraming pamilya ang "
    "nangailangan ng tubig, pagkain, at matutuluyan matapos masira ng lindol "
    "ang kanilang mga bahay. Dumating ang mga boluntaryo mula sa mga karatig "
    "na lungsod dala ang tulong at inalagaan ang mga nasugatan. Binuksan ng "
    "paaralan ang mga pinto nito bilang pansamantalang kanlungan para sa mga "
    "nawalan ng tahanan. Hiniling ng mga opisyal sa mga residente na iwasan "
    "ang ilog dahil patuloy na tumataas ang tubig. Ginamot ng mga ospital ang "
    "maraming pasyente at sinabi ng mga doktor na gagaling din sila. Nangako "
    "ang pamahalaan ng pondo upang muling itayo ang mga tulay at ayusin ang "
    "mga nasirang gusali. Iniulat ng mga magsasaka na ang kanilang mga bukid "
    "ay nalubog sa tubig at nasira ang ani. Ayon sa mga pagtataya, uulan muli "
    "sa linggong ito kaya mapanganib pa rin ang kalagayan. Nagbahagi ang mga "
    "tao ng impormasyon tungkol sa mga nawawala at sa mga ligtas na lugar. "
    "Nangolekta ang simbahan ng mga damit at kumot para sa mga apektadong "
    "pamilya. Bumalik ang mga bata sa paaralan pagkatapos ng dalawang linggo "
    "nang malinis ang mga gusali. Nagtulungan ang magkakapitbahay na ayusin "
    "ang mga bubong at alisin ang mga punong natumba sa mga kalsada. "
    "Nagpasalamat ang alkalde sa lahat ng nagtrabaho sa mga araw na iyon.";

} // namespace crisda::detail

namespace crisda {

inline std::vector<LanguageProfile> builtin_language_profiles() {
    std::vector<LanguageProfile> profiles;
    profiles.push_back(LanguageProfile::from_text("en", detail::kRefEn));
    profiles.push_back(LanguageProfile::from_text("es", detail::kRefEs));
    profiles.push_back(LanguageProfile::from_text("it", detail::kRefIt));
    profiles.push_back(LanguageProfile::from_text("tl", detail::kRefTl));
    return profiles;
}

} // namespace crisda
