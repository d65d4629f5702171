"""Regenerate the bundled verb and antonym lexicon files.

Run from the repo root: python tools/make_lexicon_data.py
"""

IRREGULAR = """\
have has had having had
go goes went going gone
get gets got getting gotten
make makes made making made
know knows knew knowing known
think thinks thought thinking thought
take takes took taking taken
see sees saw seeing seen
come comes came coming come
find finds found finding found
give gives gave giving given
tell tells told telling told
feel feels felt feeling felt
become becomes became becoming become
leave leaves left leaving left
put puts put putting put
mean means meant meaning meant
keep keeps kept keeping kept
let lets let letting let
begin begins began beginning begun
show shows showed showing shown
hear hears heard hearing heard
run runs ran running run
bring brings brought bringing brought
write writes wrote writing written
sit sits sat sitting sat
stand stands stood standing stood
lose loses lost losing lost
pay pays paid paying paid
meet meets met meeting met
set sets set setting set
lead leads led leading led
understand understands understood understanding understood
speak speaks spoke speaking spoken
read reads read reading read
spend spends spent spending spent
grow grows grew growing grown
win wins won winning won
teach teaches taught teaching taught
catch catches caught catching caught
buy buys bought buying bought
fall falls fell falling fallen
send sends sent sending sent
build builds built building built
draw draws drew drawing drawn
break breaks broke breaking broken
wear wears wore wearing worn
choose chooses chose choosing chosen
deal deals dealt dealing dealt
fight fights fought fighting fought
throw throws threw throwing thrown
rise rises rose rising risen
eat eats ate eating eaten
drink drinks drank drinking drunk
sleep sleeps slept sleeping slept
drive drives drove driving driven
fly flies flew flying flown
forget forgets forgot forgetting forgotten
forgive forgives forgave forgiving forgiven
freeze freezes froze freezing frozen
hang hangs hung hanging hung
hide hides hid hiding hidden
hit hits hit hitting hit
hold holds held holding held
hurt hurts hurt hurting hurt
lay lays laid laying laid
lie lies lay lying lain
light lights lit lighting lit
quit quits quit quitting quit
ride rides rode riding ridden
ring rings rang ringing rung
seek seeks sought seeking sought
sell sells sold selling sold
shake shakes shook shaking shaken
shine shines shone shining shone
shoot shoots shot shooting shot
shut shuts shut shutting shut
sing sings sang singing sung
sink sinks sank sinking sunk
slide slides slid sliding slid
steal steals stole stealing stolen
stick sticks stuck sticking stuck
sting stings stung stinging stung
strike strikes struck striking struck
swear swears swore swearing sworn
sweep sweeps swept sweeping swept
swim swims swam swimming swum
swing swings swung swinging swung
tear tears tore tearing torn
wake wakes woke waking woken
weep weeps wept weeping wept
bend bends bent bending bent
bet bets bet betting bet
bid bids bid bidding bid
bind binds bound binding bound
bite bites bit biting bitten
bleed bleeds bled bleeding bled
blow blows blew blowing blown
breed breeds bred breeding bred
burst bursts burst bursting burst
cast casts cast casting cast
cling clings clung clinging clung
cost costs cost costing cost
creep creeps crept creeping crept
cut cuts cut cutting cut
dig digs dug digging dug
feed feeds fed feeding fed
flee flees fled fleeing fled
fling flings flung flinging flung
forbid forbids forbade forbidding forbidden
foresee foresees foresaw foreseeing foreseen
grind grinds ground grinding ground
kneel kneels knelt kneeling knelt
lend lends lent lending lent
mistake mistakes mistook mistaking mistaken
misunderstand misunderstands misunderstood misunderstanding misunderstood
outgrow outgrows outgrew outgrowing outgrown
overcome overcomes overcame overcoming overcome
overeat overeats overate overeating overeaten
oversleep oversleeps overslept oversleeping overslept
overtake overtakes overtook overtaking overtaken
prove proves proved proving proven
rebuild rebuilds rebuilt rebuilding rebuilt
repay repays repaid repaying repaid
reset resets reset resetting reset
rethink rethinks rethought rethinking rethought
rewrite rewrites rewrote rewriting rewritten
rid rids rid ridding rid
say says said saying said
sew sews sewed sewing sewn
shed sheds shed shedding shed
shrink shrinks shrank shrinking shrunk
spin spins spun spinning spun
spit spits spat spitting spat
split splits split splitting split
spread spreads spread spreading spread
spring springs sprang springing sprung
stink stinks stank stinking stunk
swell swells swelled swelling swollen
tread treads trod treading trodden
undergo undergoes underwent undergoing undergone
undo undoes undid undoing undone
upset upsets upset upsetting upset
weave weaves wove weaving woven
wind winds wound winding wound
withdraw withdraws withdrew withdrawing withdrawn
arise arises arose arising arisen
awake awakes awoke awaking awoken
bear bears bore bearing borne
beat beats beat beating beaten
"""

REGULAR = """
abandon absorb abstain accept access accompany accomplish achieve acknowledge
acquire act adapt add address adhere adjust admire admit adopt advance
advertise advise affect afford aggravate agree aid aim alert align alleviate
allow amputate analyze announce annoy answer anticipate apologize appeal
appear apply appoint appreciate approach approve argue arrange arrest arrive
ask assemble assert assess assign assist assume assure attach attack attempt
attend attract attribute audit avoid award bake balance bandage base bathe
battle behave believe belong benefit bike binge blame bleach blend bless
blink blister block blog board boast boil book boost border borrow bother
bounce bow brace brake branch brand breathe bridge bruise brush bubble
budget bulk bump burn bury calculate call calm camp cancel capture care
carry carve cause caution cease celebrate center chain challenge change
charge chart chase chat cheat check cheer chew choke chop claim clap clarify
classify clean cleanse clear climb clog close clot coach collapse collect
combat combine comfort command comment commit communicate compare compete
compile complain complete complicate comply compose compute conceal conceive
concentrate concern conclude condition conduct confess confirm confront
confuse connect consider consist construct consult consume contact
contaminate contain continue contract contribute control convert convince
convulse cook cool cooperate coordinate cope copy correct correspond cough
counsel count cover crack cramp crash crave create criticize crop cross
crush cry cultivate cure curl curse damage dance dare debate decide declare
decline decorate decrease dedicate defeat defend define degenerate dehydrate
delay delete deliver demand demonstrate deny depart depend deposit derive
descend describe deserve design desire destroy detach detail detect
deteriorate determine develop devote diagnose dictate die diet differ digest
dip direct disagree disappear disappoint discharge disconnect discourage
discover discuss disinfect dislike dislocate dismiss disobey display
distribute distrust disturb divide divorce document dominate donate dot
double doubt download drag drain dress drift drill drip drop drum dry dump
earn ease echo edit educate elect elevate eliminate email embrace emerge
emphasize employ empty enable encounter encourage end endure engage enhance
enjoy enroll ensure enter entertain equal equip escape establish estimate
evaluate evolve exacerbate examine exceed exchange excite exclude excrete
excuse execute exercise exhale exhaust exhibit exist exit expand expect
experience experiment explain explode explore export expose express extend
extract face fade fail faint fan fancy fast fasten favor fear feature file
fill film filter finish fire fish fix flag flap flash flatten flavor flip
float flood flop flow flush focus fold follow force form format foster
fracture frame frighten fry fuel function fund gag gain gather gaze generate
gesture glance glow govern grab graduate grant greet grill grin grip guard
guarantee guess guide gut hand handle happen harm harvest hate haunt head
heal heat help hesitate hike hinder hint hire hop hope hospitalize host
house hover hug hum hunt hurry hydrate ice identify ignore illustrate
imagine imitate immunize impair implant implement imply import impose
impress improve include incorporate increase incubate indicate induce
indulge infect inflame influence inform inherit initiate inject injure insert
insist inspect inspire install instruct insult integrate intend interact
interest interfere interpret interrupt interview introduce invent invest
investigate invite involve iron irritate isolate issue itch jam jog join
joke jot judge jump justify kick kidnap kill kiss knock label lack lag land
last laugh launch learn lecture lengthen level license lift like limit link
list
listen live load locate lock log long look loosen love lower lug maintain
man manage manifest manipulate manufacture map march mark market marry
massage master match mate matter mature maximize measure medicate melt
mention merge metabolize migrate mind mine minimize miss mix mob moderate
modify monitor mop motivate mount move mug multiply name narrow navigate
need neglect negotiate nod nominate normalize note notice notify nourish
number numb obey object oblige observe obtain occupy occur offend offer
omit open operate oppose opt order organize overwhelm owe own pack pad
paint pair paralyze park participate pass paste pat pause peg perform
permit persist persuade pet phone photograph pick picture pile pin pinch
pioneer pit place plan plant play please plod plot plug point polish
pollute pop pose position possess post postpone pot pour practice praise
pray preach predict prefer prepare prescribe present preserve press
pretend prevent price print proceed process prod produce profit program
progress prolong promise promote prompt pronounce prop propose protect
protest provide provoke publish pull pump punish purchase purge pursue
push qualify quarantine question quiz race rain raise ram range rank rap
rate reach react realize reason reassure recall receive recognize
recommend recondition reconsider record recover recruit recycle reduce
refer reflect refuse register regret regulate rehabilitate reject relapse
relate relax release relieve rely remain remark remember remind remit
remove rename rent repair repeat replace replenish reply report represent
request require rescue research reserve resign resist resolve respect
respond rest restore restrict result resume retire retrain retreat return
reveal review revise reward rig rim rip risk roam roast rob rock roll rot
rub ruin rule rush sag sail sample satisfy save scale scam scan scar scare
scatter schedule score scratch scream screen scrub search season secrete
seem seize select separate serve settle shape share shift ship shiver
shock shop shorten shout shower shred shrug shun sigh sign signal simplify
sin sip ski skim skip slam slap slice slim slip slop slot slow slug smile
smoke snag snap sneeze sniff snore snub soak sob solve soothe sort sound
spam span spar spare spark spasm specify spell spill splint spoil sponsor
spot spray sprain sprint spur squat squeeze stab stabilize stack stain
stamp star stare start starve state stay steer stem step stir stitch stop
store storm straighten strain strap strengthen stress stretch strip structure
struggle study stuff stumble stun subtract submit succeed suck suffer
suffocate suggest suit sum supply support suppose surf surge surprise
surrender surround survey survive suspect suspend suture swab swallow
swap swat sweat swig switch sympathize synthesize tag talk tame tan tap
target taste tax telephone tempt terminate test thank thaw thin thaw
threaten thrive throb tick tie tighten time tingle tip tire title tolerate
tone toss total touch tour track trade train transfer translate transmit
transplant trap travel treat trek tremble trick trigger trim trip trot
trust try tug tune turn twist twitch type underestimate undermine unearth
unfold unify unite unload unlock update upgrade upload urge use vaccinate
value vanish vary venture verify view visit visualize voice volunteer
vomit vote wait walk wander want warm warn wash waste watch water wave
weaken weigh welcome wheeze whip whisper widen wipe wish witness wonder
work worry worsen wound wrap wrestle yawn yell yield zap zigzag zip zoom
"""

ANTONYMS = {
    "have": ["abstain"],
    "abstain": ["indulge"],
    "indulge": ["abstain"],
    "increase": ["decrease", "reduce"],
    "decrease": ["increase"],
    "reduce": ["increase"],
    "improve": ["worsen", "deteriorate"],
    "worsen": ["improve"],
    "deteriorate": ["improve"],
    "raise": ["lower"],
    "lower": ["raise"],
    "open": ["close"],
    "close": ["open"],
    "start": ["stop", "finish"],
    "stop": ["start", "continue"],
    "begin": ["end", "finish"],
    "end": ["begin", "start"],
    "continue": ["stop", "cease"],
    "cease": ["continue"],
    "finish": ["start", "begin"],
    "win": ["lose"],
    "lose": ["win", "gain"],
    "gain": ["lose"],
    "love": ["hate"],
    "hate": ["love"],
    "accept": ["reject", "refuse"],
    "reject": ["accept"],
    "refuse": ["accept"],
    "buy": ["sell"],
    "sell": ["buy"],
    "remember": ["forget"],
    "forget": ["remember"],
    "agree": ["disagree"],
    "disagree": ["agree"],
    "include": ["exclude"],
    "exclude": ["include"],
    "allow": ["forbid", "prevent"],
    "forbid": ["allow", "permit"],
    "permit": ["forbid"],
    "appear": ["disappear", "vanish"],
    "disappear": ["appear"],
    "vanish": ["appear"],
    "attack": ["defend"],
    "defend": ["attack"],
    "build": ["destroy"],
    "destroy": ["build", "create"],
    "create": ["destroy"],
    "arrive": ["depart", "leave"],
    "depart": ["arrive"],
    "leave": ["arrive", "stay"],
    "stay": ["leave"],
    "borrow": ["lend"],
    "lend": ["borrow"],
    "break": ["fix", "repair"],
    "fix": ["break"],
    "repair": ["break", "damage"],
    "damage": ["repair", "heal"],
    "catch": ["release"],
    "release": ["catch", "capture"],
    "capture": ["release"],
    "connect": ["disconnect", "separate"],
    "disconnect": ["connect"],
    "expand": ["contract", "shrink"],
    "contract": ["expand"],
    "shrink": ["expand", "grow"],
    "grow": ["shrink"],
    "fail": ["succeed"],
    "succeed": ["fail"],
    "fall": ["rise"],
    "rise": ["fall", "sink"],
    "find": ["lose"],
    "float": ["sink"],
    "sink": ["float", "rise"],
    "gather": ["scatter"],
    "scatter": ["gather"],
    "give": ["take", "receive"],
    "take": ["give"],
    "receive": ["send", "give"],
    "send": ["receive"],
    "harm": ["heal", "protect"],
    "heal": ["harm", "wound"],
    "wound": ["heal"],
    "help": ["hinder", "hurt"],
    "hinder": ["help"],
    "hurt": ["heal", "help"],
    "hire": ["fire"],
    "fire": ["hire"],
    "ignore": ["notice"],
    "notice": ["ignore"],
    "lengthen": ["shorten"],
    "shorten": ["lengthen", "extend"],
    "extend": ["shorten", "reduce"],
    "live": ["die"],
    "die": ["live"],
    "load": ["unload"],
    "unload": ["load"],
    "lock": ["unlock"],
    "unlock": ["lock"],
    "marry": ["divorce"],
    "divorce": ["marry"],
    "maximize": ["minimize"],
    "minimize": ["maximize"],
    "obey": ["disobey"],
    "disobey": ["obey"],
    "praise": ["criticize"],
    "criticize": ["praise"],
    "push": ["pull"],
    "pull": ["push"],
    "save": ["spend", "waste"],
    "spend": ["save"],
    "waste": ["save"],
    "show": ["hide"],
    "hide": ["show", "reveal"],
    "reveal": ["hide", "conceal"],
    "conceal": ["reveal"],
    "sit": ["stand"],
    "stand": ["sit"],
    "sleep": ["wake"],
    "wake": ["sleep"],
    "strengthen": ["weaken"],
    "weaken": ["strengthen"],
    "teach": ["learn"],
    "learn": ["teach"],
    "tighten": ["loosen"],
    "loosen": ["tighten"],
    "trust": ["doubt", "distrust"],
    "doubt": ["trust"],
    "distrust": ["trust"],
    "unite": ["divide"],
    "divide": ["unite", "combine", "multiply"],
    "combine": ["separate", "divide"],
    "separate": ["combine", "unite", "connect"],
    "encourage": ["discourage"],
    "discourage": ["encourage"],
    "enter": ["exit", "leave"],
    "exit": ["enter"],
    "expose": ["conceal", "protect"],
    "protect": ["expose", "harm"],
    "prevent": ["cause", "allow"],
    "cause": ["prevent"],
    "trigger": ["prevent"],
    "relieve": ["aggravate"],
    "aggravate": ["relieve", "alleviate"],
    "alleviate": ["aggravate", "worsen"],
    "cure": ["infect"],
    "infect": ["cure", "disinfect"],
    "disinfect": ["infect"],
    "ask": ["answer"],
    "answer": ["ask"],
    "attach": ["detach"],
    "detach": ["attach"],
    "bend": ["straighten"],
    "straighten": ["bend"],
    "bless": ["curse"],
    "curse": ["bless"],
    "cool": ["heat", "warm"],
    "heat": ["cool"],
    "warm": ["cool"],
    "dry": ["soak"],
    "soak": ["dry"],
    "empty": ["fill"],
    "fill": ["empty", "drain"],
    "drain": ["fill"],
    "freeze": ["melt", "thaw"],
    "melt": ["freeze"],
    "thaw": ["freeze"],
    "laugh": ["cry", "weep"],
    "cry": ["laugh"],
    "weep": ["laugh"],
    "whisper": ["shout", "yell", "scream"],
    "shout": ["whisper"],
    "yell": ["whisper"],
    "scream": ["whisper"],
    "throw": ["catch"],
    "insert": ["remove", "extract"],
    "remove": ["insert", "add"],
    "add": ["remove", "subtract"],
    "subtract": ["add"],
    "admit": ["deny"],
    "deny": ["admit", "confirm"],
    "confirm": ["deny"],
    "simplify": ["complicate"],
    "complicate": ["simplify"],
    "import": ["export"],
    "export": ["import"],
    "upload": ["download"],
    "download": ["upload"],
    "multiply": ["divide"],
    "widen": ["narrow"],
    "narrow": ["widen"],
    "bury": ["unearth"],
    "unearth": ["bury"],
    "strain": ["relax"],
    "relax": ["strain"],
}


def main():
    irregular = {}
    for line in IRREGULAR.strip().splitlines():
        base, p3, past, ger, pp = line.split()
        assert base not in irregular, f"duplicate irregular {base}"
        irregular[base] = (p3, past, ger, pp)

    regular = sorted(set(REGULAR.split()))
    overlap = set(regular) & set(irregular)
    assert not overlap, f"verbs listed both regular and irregular: {sorted(overlap)}"
    stop = {"be", "am", "is", "are", "was", "were", "been", "being",
            "do", "does", "did", "doing", "done"}
    bases = set(regular) | set(irregular)
    assert not bases & stop, f"stoplisted base in lexicon: {sorted(bases & stop)}"

    for key, values in ANTONYMS.items():
        assert key in bases, f"antonym key {key!r} not in lexicon"
        assert key not in values, f"{key!r} is its own antonym"
        for v in values:
            assert v in bases, f"antonym value {v!r} (for {key!r}) not in lexicon"

    rows = []
    for base in sorted(bases):
        if base in irregular:
            p3, past, ger, pp = irregular[base]
            rows.append(f"{base}\t{p3}\t{past}\t{ger}\t{pp}")
        else:
            rows.append(f"{base}\t-\t-\t-\t-")

    with open("src/claimaug/data/verbs.tsv", "w", encoding="utf-8") as f:
        f.write("\n".join(rows) + "\n")
    with open("src/claimaug/data/antonyms.tsv", "w", encoding="utf-8") as f:
        for key in sorted(ANTONYMS):
            f.write(f"{key}\t{','.join(ANTONYMS[key])}\n")
    print(f"wrote {len(rows)} verbs ({len(irregular)} irregular), "
          f"{len(ANTONYMS)} antonym entries")


if __name__ == "__main__":
    main()
