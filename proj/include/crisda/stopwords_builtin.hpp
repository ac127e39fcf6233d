// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include "crisda/text.hpp"

// Built-in stopword lists for the four languages the bundled configs cover.
// Stored in the same one-word-per-line format as user-supplied files and
// parsed through the same code path. Entries are pre-folded (lowercase,
// composed accents) to match tokenizer output.

namespace crisda::detail {

inline constexpr const char* kStopwordsEn = R"(a
about
above
after
again
against
all
am
an
and
any
are
aren't
as
at
be
because
been
before
being
below
between
both
but
by
can
cannot
could
couldn't
did
didn't
do
does
doesn't
doing
don't
down
during
each
few
for
from
further
had
hadn't
has
hasn't
have
haven't
having
he
he'd
he'll
he's
her
here
here's
hers
herself
him
himself
his
how
how's
i
i'd
i'll
i'm
i've
if
in
into
is
isn't
it
it's
its
itself
let's
me
more
most
mustn't
my
myself
no
nor
not
of
off
on
once
only
or
other
ought
our
ours
ourselves
out
over
own
same
shan't
she
she'd
she'll
she's
should
shouldn't
so
some
such
than
that
that's
the
their
theirs
them
themselves
then
there
there's
these
they
they'd
they'll
they're
they've
this
those
through
to
too
under
until
up
very
was
wasn't
we
we'd
we'll
we're
we've
were
weren't
what
what's
when
when's
where
where's
which
while
who
who's
whom
why
why's
will
with
won't
would
wouldn't
you
you'd
you'll
you're
you've
your
yours
yourself
yourselves
)";

inline constexpr const char* kStopwordsEs = R"(a
al
algo
algunas
algunos
ante
antes
como
con
contra
cual
cuando
de
del
desde
donde
durante
e
el
él
ella
ellas
ellos
en
entre
era
erais
éramos
eran
eras
eres
es
esa
esas
ese
eso
esos
esta
está
estaba
estamos
están
estar
estas
este
esto
estos
estoy
fue
fueron
fui
fuimos
ha
habéis
haber
había
han
has
hasta
hay
haya
he
hemos
la
las
le
les
lo
los
más
me
mi
mía
mías
mío
míos
mis
mucho
muchos
muy
nada
ni
no
nos
nosotras
nosotros
nuestra
nuestras
nuestro
nuestros
o
os
otra
otras
otro
otros
para
pero
poco
por
porque
que
qué
quien
quienes
se
sea
seamos
sean
seas
ser
si
sí
sido
siendo
sin
sobre
sois
somos
son
soy
su
sus
suya
suyas
suyo
suyos
también
tanto
te
tenemos
tenéis
tenga
tengo
ti
tiene
tienen
tienes
toda
todas
todo
todos
tu
tú
tus
tuya
tuyas
tuyo
tuyos
un
una
uno
unos
vosotras
vosotros
vuestra
vuestras
vuestro
vuestros
y
ya
yo
)";

inline constexpr const char* kStopwordsIt = R"(a
abbiamo
ad
agli
ai
al
alla
alle
allo
anche
avere
avete
aveva
avevano
c'è
che
chi
ci
coi
col
come
con
contro
cui
da
dagli
dai
dal
dalla
dalle
dallo
degli
dei
del
della
delle
dello
di
dove
e
è
ed
era
erano
ero
essere
fu
già
gli
ha
hai
hanno
ho
i
il
in
io
l
la
le
lei
li
lo
loro
lui
ma
mi
mia
mie
miei
mio
molto
ne
negli
nei
nel
nella
nelle
nello
noi
non
nostra
nostre
nostri
nostro
o
per
però
più
poi
quale
quando
quanta
quante
quanti
quanto
quella
quelle
quelli
quello
questa
queste
questi
questo
qui
sarà
se
sei
sempre
si
sia
siamo
siete
sono
sta
stata
state
stati
stato
su
sua
sue
sugli
sui
sul
sulla
sulle
sullo
suo
suoi
ti
tra
tu
tua
tue
tuo
tuoi
tutta
tutte
tutti
tutto
un
una
uno
vi
voi
vostra
vostre
vostri
vostro
)";

inline constexpr const char* kStopwordsTl = R"(akin
ako
alin
amin
ang
ano
anong
at
atin
ay
ayaw
ba
baka
bakit
bago
bawat
daw
dahil
dapat
din
dito
diyan
doon
gusto
habang
hanggang
hindi
iba
ikaw
ilan
inyo
isang
ito
iyan
iyo
iyon
ka
kahit
kailan
kami
kanila
kanino
kanya
kapag
kasi
kay
kayo
kina
kita
ko
kung
laban
lahat
lamang
lang
mag
maging
marami
may
mayroon
medyo
mga
mo
mula
muna
na
naman
namin
nang
napaka
natin
ng
nga
ngayon
ngunit
ni
nila
nina
ninyo
nito
niya
niyan
niyon
noon
o
oo
pa
paano
pala
para
parang
pero
po
pwede
puwede
raw
rin
sa
saan
sana
si
sila
sina
sino
siguro
siya
subalit
talaga
tayo
tungkol
ulit
upang
wala
walang
yan
yun
yung
)";

} // namespace crisda::detail

namespace crisda {

/// Stopword lists shipped with the library: en, es, it, tl.
inline StopwordTable builtin_stopwords() {
    StopwordTable table;
    table.set_language("en", parse_stopword_list(detail::kStopwordsEn));
    table.set_language("es", parse_stopword_list(detail::kStopwordsEs));
    table.set_language("it", parse_stopword_list(detail::kStopwordsIt));
    table.set_language("tl", parse_stopword_list(detail::kStopwordsTl));
    return table;
}

} // namespace crisda
