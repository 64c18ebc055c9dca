// Copyright 2026 The LeCov Authors
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

// Generated from data/synonyms_en.txt; keep the two in sync.

#pragma once

#include <string_view>

namespace lecov {

inline constexpr std::string_view kEmbeddedSynonyms = R"SYN(# word: synonym, synonym, ...
able: capable, competent, skilled
about: regarding, concerning, around
above: over, beyond, higher
accept: receive, take, admit
accurate: precise, exact, correct
achieve: accomplish, attain, reach
act: deed, action, perform
active: busy, lively, energetic
actual: real, genuine, true
add: include, append, attach
adjust: adapt, modify, tune
admire: respect, esteem, praise
advice: guidance, counsel, tip
afraid: scared, fearful, frightened
after: following, later, behind
again: anew, afresh
agree: concur, assent, consent
aim: goal, target, objective
allow: permit, let, enable
almost: nearly, practically, virtually
alone: solo, solitary, unaccompanied
also: too, additionally, furthermore
always: forever, constantly, perpetually
amazing: astonishing, incredible, remarkable
amount: quantity, sum, total
ancient: old, antique, archaic
anger: rage, fury, wrath
angry: mad, furious, irate
answer: reply, response, solution
anxious: nervous, worried, uneasy
appear: emerge, seem, surface
area: region, zone, district
arrive: come, reach, land
ask: inquire, question, query
assist: help, aid, support
attempt: try, effort, endeavor
attack: assault, strike, charge
attractive: appealing, charming, lovely
average: typical, mean, ordinary
avoid: evade, dodge, shun
aware: conscious, mindful, alert
awful: terrible, dreadful, horrible
bad: poor, awful, inferior
balance: equilibrium, stability, steadiness
ban: prohibit, forbid, bar
basic: fundamental, elementary, simple
battle: fight, combat, struggle
beautiful: pretty, lovely, gorgeous
begin: start, commence, initiate
behave: act, conduct, perform
belief: conviction, faith, opinion
believe: trust, accept, think
below: under, beneath, underneath
benefit: advantage, gain, profit
best: finest, top, greatest
big: large, huge, enormous
blend: mix, combine, stir
bold: brave, daring, fearless
boring: dull, tedious, monotonous
borrow: loan, take, obtain
brave: courageous, bold, heroic
break: fracture, shatter, pause
brief: short, concise, quick
bright: shiny, brilliant, vivid
broad: wide, expansive, extensive
build: construct, erect, assemble
busy: occupied, active, engaged
buy: purchase, acquire, obtain
calm: peaceful, quiet, serene
capable: able, competent, skilled
care: concern, attention, caution
careful: cautious, prudent, wary
carry: bring, transport, convey
cause: reason, source, origin
certain: sure, definite, positive
change: alter, modify, shift
cheap: inexpensive, affordable, economical
check: verify, inspect, examine
cheerful: happy, merry, jolly
choose: select, pick, opt
clean: spotless, tidy, pure
clear: plain, obvious, transparent
clever: smart, bright, intelligent
close: near, shut, adjacent
cold: chilly, cool, freezing
collect: gather, assemble, accumulate
combine: merge, join, unite
come: arrive, approach, reach
comfortable: cozy, relaxed, snug
common: ordinary, usual, frequent
complete: finish, whole, entire
complex: complicated, intricate, elaborate
concern: worry, issue, matter
confirm: verify, validate, affirm
consider: ponder, contemplate, weigh
constant: steady, continual, stable
contain: hold, include, comprise
continue: proceed, persist, resume
control: manage, command, govern
cook: prepare, bake, roast
cool: chilly, cold, calm
correct: right, accurate, proper
cost: price, expense, charge
create: make, produce, generate
crowd: throng, mass, horde
cruel: harsh, brutal, vicious
cry: weep, sob, shout
cut: slice, chop, trim
damage: harm, injury, ruin
danger: peril, hazard, risk
dangerous: risky, hazardous, perilous
dark: dim, shadowy, gloomy
decide: determine, resolve, choose
decrease: reduce, decline, lessen
deep: profound, bottomless, intense
defeat: beat, conquer, overcome
delicious: tasty, flavorful, savory
demand: request, require, claim
describe: explain, portray, depict
destroy: ruin, wreck, demolish
detail: feature, particular, element
develop: grow, evolve, expand
difference: distinction, contrast, variation
different: distinct, diverse, unlike
difficult: hard, tough, challenging
dirty: filthy, grimy, soiled
discover: find, detect, uncover
distant: far, remote, faraway
divide: split, separate, partition
dull: boring, bland, flat
eager: keen, enthusiastic, avid
early: premature, initial, first
earn: gain, make, obtain
easy: simple, effortless, straightforward
eat: consume, devour, dine
effect: result, outcome, impact
effort: attempt, exertion, work
empty: vacant, hollow, bare
end: finish, conclusion, close
enemy: foe, rival, opponent
energy: power, vigor, force
enjoy: like, appreciate, relish
enormous: huge, vast, immense
enough: sufficient, adequate, ample
enter: penetrate, join
entire: whole, complete, full
error: mistake, fault, flaw
escape: flee, evade, abscond
essential: vital, crucial, necessary
estimate: guess, approximate, gauge
event: occasion, incident, happening
evil: wicked, bad, sinful
exact: precise, accurate, correct
examine: inspect, study, scrutinize
example: instance, sample, case
excellent: superb, outstanding, great
exciting: thrilling, stirring, exhilarating
expand: grow, enlarge, extend
expect: anticipate, await, foresee
expensive: costly, pricey, dear
explain: clarify, describe, elucidate
explore: investigate, examine, probe
fact: truth, reality, detail
fail: flop, miss, collapse
fair: just, impartial, equitable
faithful: loyal, devoted, true
fake: false, counterfeit, phony
false: untrue, incorrect, wrong
famous: renowned, celebrated, noted
fast: quick, rapid, swift
fat: plump, chubby, stout
fault: flaw, defect, error
fear: dread, terror, fright
feel: sense, experience, perceive
fierce: ferocious, savage, intense
fight: battle, combat, struggle
fill: load, pack, stuff
final: last, ultimate, concluding
find: discover, locate, detect
fine: good, excellent, okay
finish: complete, end, conclude
firm: solid, steady, company
fix: repair, mend, correct
flat: level, even, smooth
follow: pursue, trail, obey
fool: idiot, dunce, trick
force: power, strength, compel
forgive: pardon, excuse, absolve
former: previous, earlier, prior
fortune: wealth, luck, riches
free: liberated, gratis, unrestricted
fresh: new, crisp, novel
friend: companion, pal, ally
friendly: amiable, kind, cordial
frighten: scare, alarm, startle
full: filled, complete, packed
funny: amusing, comical, humorous
gain: profit, earn, acquire
game: match, contest, sport
gather: collect, assemble, accumulate
general: common, broad, universal
gentle: mild, soft, tender
genuine: real, authentic, true
get: obtain, acquire, receive
giant: huge, colossal, massive
gift: present, donation, talent
give: donate, provide, grant
glad: happy, pleased, delighted
goal: aim, target, objective
good: fine, great, decent
grab: seize, grasp, snatch
great: excellent, grand, superb
greedy: avaricious, grasping, selfish
grow: expand, increase, develop
guard: protect, defend, watch
guess: estimate, suppose, predict
guide: lead, steer, direct
happy: cheerful, glad, joyful
hard: difficult, tough, firm
harm: damage, hurt, injury
hate: detest, loathe, despise
heal: cure, mend, remedy
healthy: fit, well, robust
heat: warmth, warm, bake
heavy: weighty, hefty, massive
help: aid, assist, support
hide: conceal, cover, mask
high: tall, lofty, elevated
hit: strike, punch, smash
hold: grip, keep, contain
honest: truthful, sincere, frank
hope: wish, desire, expect
hot: warm, heated, spicy
huge: enormous, giant, vast
humble: modest, meek, unassuming
hunt: search, chase, pursue
hurry: rush, hasten, dash
hurt: injure, harm, wound
idea: notion, concept, thought
ignore: disregard, overlook, neglect
ill: sick, unwell, ailing
imagine: picture, envision, suppose
important: significant, vital, crucial
improve: enhance, better, upgrade
include: contain, involve, cover
increase: raise, boost, grow
influence: affect, sway, impact
inform: tell, notify, advise
injure: hurt, wound, harm
innocent: guiltless, blameless, pure
intelligent: smart, clever, bright
interesting: fascinating, engaging, intriguing
job: work, task, occupation
join: connect, unite, link
journey: trip, voyage, travel
joy: delight, happiness, glee
jump: leap, hop, spring
keep: retain, hold, preserve
kill: slay, murder, destroy
kind: nice, caring, type
know: understand, recognize, realize
large: big, huge, vast
last: final, endure, ultimate
late: tardy, delayed, overdue
laugh: chuckle, giggle, chortle
lazy: idle, sluggish, slothful
lead: guide, direct, head
learn: study, discover, master
leave: depart, exit, go
lie: falsehood, fib, recline
lift: raise, hoist, elevate
light: bright, glow, weightless
like: enjoy, similar, prefer
limit: boundary, cap, restrict
little: small, tiny, slight
live: reside, dwell, exist
lively: energetic, active, spirited
long: lengthy, extended, prolonged
look: see, glance, watch
lose: misplace, forfeit, drop
loud: noisy, booming, deafening
love: adore, cherish, affection
lovely: beautiful, charming, pleasant
low: short, small, quiet
loyal: faithful, devoted, true
lucky: fortunate, blessed, happy
mad: angry, insane, crazy
main: chief, primary, principal
make: create, build, produce
many: numerous, several, countless
mark: sign, label, stain
market: bazaar, exchange, trade
massive: huge, enormous, giant
match: game, pair, equal
maybe: perhaps, possibly, perchance
mean: unkind, average, signify
measure: gauge, assess, quantify
meet: encounter, greet, assemble
mend: repair, fix, restore
method: approach, technique, way
mild: gentle, moderate, soft
mistake: error, blunder, slip
mix: blend, combine, stir
modern: current, contemporary, recent
money: cash, funds, currency
move: shift, transfer, budge
narrow: thin, slim, tight
near: close, nearby, adjacent
neat: tidy, orderly, trim
necessary: needed, essential, required
need: require, want, lack
new: fresh, novel, modern
nice: pleasant, kind, lovely
noise: sound, din, racket
normal: usual, regular, typical
notice: observe, see, spot
obey: follow, comply, heed
object: thing, item, article
observe: watch, notice, see
obtain: get, acquire, gain
odd: strange, peculiar, weird
offer: propose, provide, present
often: frequently, regularly, repeatedly
old: aged, ancient, elderly
open: unlock, unfold, begin
order: command, sequence, request
ordinary: normal, common, regular
part: piece, portion, section
perfect: flawless, ideal, impeccable
permit: allow, let, authorize
pick: choose, select, pluck
place: spot, location, put
plain: simple, clear, ordinary
plan: scheme, design, strategy
pleasant: nice, agreeable, enjoyable
polite: courteous, respectful, civil
poor: needy, broke, inferior
popular: famous, liked, favored
possible: feasible, likely, potential
powerful: strong, mighty, potent
praise: acclaim, commend, applaud
precise: exact, accurate, specific
predict: forecast, foresee, anticipate
prepare: ready, arrange, plan
present: gift, current, show
pretty: attractive, lovely, fairly
prevent: stop, avert, hinder
price: cost, charge, fee
problem: issue, trouble, difficulty
produce: make, create, generate
profit: gain, earnings, return
protect: guard, shield, defend
proud: pleased, arrogant, honored
prove: show, demonstrate, verify
pull: drag, tug, haul
punish: penalize, discipline, correct
purchase: buy, acquire, obtain
push: shove, press, thrust
put: place, set, lay
question: query, inquiry, ask
quick: fast, rapid, swift
quiet: silent, calm, hushed
raise: lift, elevate, increase
rapid: fast, quick, swift
rare: uncommon, scarce, unusual
reach: arrive, attain, extend
ready: prepared, set, willing
real: genuine, actual, true
reason: cause, motive, logic
receive: get, accept, obtain
recent: new, latest, fresh
reduce: decrease, lessen, cut
refuse: decline, reject, deny
regular: normal, usual, routine
relax: rest, unwind, calm
remain: stay, linger, continue
remember: recall, recollect, remind
remove: eliminate, delete
repair: fix, mend, restore
reply: answer, respond, response
request: ask, demand, appeal
rescue: save, free, recover
respect: honor, esteem, regard
rest: relax, remainder, break
result: outcome, effect, consequence
reveal: show, disclose, expose
rich: wealthy, affluent, prosperous
right: correct, proper, accurate
risk: danger, hazard, gamble
rough: coarse, harsh, uneven
rude: impolite, discourteous, insolent
ruin: destroy, wreck, spoil
run: sprint, race, dash
sad: unhappy, sorrowful, gloomy
safe: secure, protected, unharmed
same: identical, equal, alike
satisfy: please, fulfill, content
save: rescue, keep, preserve
say: state, declare, mention
scared: afraid, frightened, fearful
search: seek, hunt, look
secret: hidden, private, confidential
see: observe, notice, view
seem: appear, look, feel
select: choose, pick, elect
sell: vend, trade, market
send: dispatch, transmit, mail
serious: grave, solemn, earnest
shape: form, figure, outline
share: divide, portion, stake
sharp: keen, pointed, acute
shine: glow, gleam, sparkle
short: brief, small, little
shout: yell, scream, cry
show: display, reveal, exhibit
shy: timid, bashful, reserved
sick: ill, unwell, ailing
silent: quiet, mute, still
simple: easy, plain, basic
slow: sluggish, leisurely, gradual
small: little, tiny, minor
smart: clever, intelligent, bright
smell: scent, odor, aroma
smooth: even, sleek, level
soft: gentle, tender, mild
solve: resolve, settle, answer
sound: noise, tone, healthy
speak: talk, say, utter
special: unique, particular, distinct
speed: velocity, pace, rate
spend: expend, use, pay
spicy: hot, peppery, zesty
spin: rotate, turn, twirl
start: begin, commence, initiate
stay: remain, linger, wait
steady: stable, constant, firm
steal: rob, take, pilfer
stop: halt, cease, end
story: tale, narrative, account
strange: odd, weird, unusual
strong: powerful, sturdy, mighty
stupid: foolish, dumb, silly
succeed: prosper, triumph, thrive
sudden: abrupt, unexpected, quick
suggest: propose, recommend, advise
support: help, back, aid
sure: certain, confident, positive
surprise: astonish, amaze, shock
sweet: sugary, pleasant, kind
take: grab, seize, accept
talk: speak, chat, converse
tall: high, lofty, towering
tasty: delicious, flavorful, yummy
teach: instruct, educate, train
tell: inform, say, narrate
terrible: awful, horrible, dreadful
test: exam, trial, check
thin: slim, slender, lean
think: believe, consider, reckon
tidy: neat, orderly, clean
tiny: small, little, minute
tired: weary, exhausted, sleepy
total: sum, whole, complete
tough: hard, strong, difficult
true: correct, real, accurate
trust: faith, confidence, belief
try: attempt, test, strive
turn: rotate, spin, twist
ugly: unsightly, hideous, plain
understand: comprehend, grasp, know
unique: distinct, singular, special
unusual: odd, rare, strange
use: employ, utilize, apply
useful: helpful, handy, practical
usual: normal, common, typical
vague: unclear, hazy, ambiguous
value: worth, merit, price
vast: huge, immense, enormous
view: sight, look, opinion
visit: call, see, tour
wait: stay, pause, linger
walk: stroll, march, hike
want: desire, wish, need
warm: hot, cozy, heated
watch: observe, view, see
weak: feeble, frail, fragile
wealth: riches, fortune, assets
weird: strange, odd, bizarre
well: fine, healthy, good
wet: damp, moist, soaked
whole: entire, complete, full
wide: broad, vast, extensive
wild: untamed, savage, fierce
win: triumph, succeed, prevail
wise: sage, sensible, smart
wish: want, desire, hope
wonderful: marvelous, amazing, fantastic
work: labor, job, toil
worry: fret, concern, anxiety
wrong: incorrect, false, mistaken
young: youthful, juvenile, new
# cooking
bake: roast, cook, heat
bowl: dish, basin, vessel
bread: loaf, bun, roll
butter: spread, margarine, fat
dinner: supper, meal, feast
dough: paste, batter, mixture
flavor: taste, savor, tang
kitchen: galley, cookhouse, scullery
meal: dinner, repast, food
oven: stove, range, kiln
recipe: formula, method, instructions
salt: seasoning, brine, sodium
sauce: gravy, dressing, relish
soup: broth, stew, chowder
stew: casserole, ragout, soup
sugar: sweetener, syrup, honey
vegetable: veggie, greens, produce
# astronomy
comet: meteor, asteroid, fireball
galaxy: nebula, cluster, cosmos
moon: satellite, luna, orb
orbit: circle, revolve, path
planet: world, globe, sphere
sky: heavens, firmament, atmosphere
space: cosmos, universe, void
star: sun, luminary, celebrity
telescope: spyglass, scope, glass
universe: cosmos, creation, space
# sports
athlete: player, sportsman, competitor
ball: sphere, globe, orb
coach: trainer, instructor, mentor
court: field, arena, pitch
field: pitch, ground, arena
goalkeeper: keeper, goalie, netminder
league: association, alliance, division
player: athlete, competitor, participant
score: tally, points, result
stadium: arena, ground, bowl
team: squad, side, crew
tournament: championship, competition, contest
trophy: prize, award, cup
# finance
bank: lender, treasury, depository
budget: allowance, allocation, plan
debt: liability, obligation, arrears
fund: reserve, pool, capital
income: earnings, revenue, salary
interest: yield, return, curiosity
investor: backer, financier, shareholder
loan: credit, advance, mortgage
payment: installment, remittance, fee
savings: reserves, funds
stock: share, equity, inventory
tax: levy, duty, tariff
)SYN";

}  // namespace lecov
