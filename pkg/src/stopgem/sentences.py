"""Reference sentence list for the recorded corpus.

Bundled as metadata only (sentence ids and orthographic text); the audio
itself is not distributed with the package.
"""

SENTENCES: dict[int, str] = {
    1: "Il gatto della vicina è bianco peloso e pazzo",
    2: "Il giardino di mio cugino è pieno di gladioli e di gnomi",
    3: "L'università italiana è un'istituzione pubblica dello stato",
    4: "Passeggerei volentieri a piedi nudi nella città vecchia",
    5: "Pietro non scappa fugge a gambe levate con il cuore in fiamme",
    6: "Cosa ne penseresti di alzarti presto e salutare il sole",
    7: "Quando Maria è in vacanza compra volentieri la settimana enigmistica",
    8: "Lo schermo del tuo cellulare è graffiato e opacizzato",
    9: "All'imbrunire la cattedrale svetta nel cielo basso e uggioso",
    10: "Alcuni studenti dell'anno accademico corrente potranno laurearsi a luglio",
    11: "Due sorelle si aiutano se vanno d'amore e d'accordo",
    12: "La struttura precaria resse malgrado il forte vento",
    13: "Mandare cartoline da città remote non è più di moda",
    14: "Discendi il Monte Bianco con gli sci e vivi un'esperienza unica e indimenticabile",
    15: "Prima o poi dovrai pur deciderti a leggere le opere di Niccolò Machiavelli",
    16: "Non potendo fare a meno del cioccolato pensò bene di privarsi della panna montata",
    17: "Che avventura meravigliosa quella di guardare gattonare un bebè",
    18: ""E pur si muove" disse il famoso scienziato rivolgendosi agli inquisitori",
    19: "Oggi piove a dirotto governo ladro",
    20: "Riporre tanti sogni nel cassetto rinforza la fantasia del poeta",
    21: "Vent'anni di allenamento non furono sufficienti a chiudere la pinza",
    22: "Senti un po' di musica e vedi che ti passa la nostalgia dell'inverno",
    23: "I clienti della Banca devono attenersi alle regole stabilite dal contratto",
    24: "Apponi la firma in calce perché è necessario per rendere valida la transazione",
    25: "I ragazzi della scuola religiosa fisseranno un appuntamento con il sindaco ateo",
    26: "Se prendi in prestito un libro alla biblioteca godi del vantaggio di non dover acquistarlo",
    27: "La rappresentazione digitale delle immagini ha rivoluzionato la fotografia",
    28: "Addio all'imperatore giapponese abdicherà oggi in favore di suo figlio",
    29: "Uno sciame di api investì il bambino biondo costringendolo a buttarsi giù dall'albero",
    30: "La ferrovia si snoda lungo il fiume seguendo un tracciato tortuoso",
    31: "Dopo avere letto molti libri Luca si rimise a studiare ancora per un po'",
    32: "Se arrivi all'alba a Capri butta l'ancora e prosegui a nuoto",
    33: "Giorgio ha deciso di prendere i voti ma prima ha dovuto battezzarsi",
    34: "Che ne farai dei quaderni di storia",
    35: "Chiedi pure a tuo padre cosa ne pensa dell'anguria",
    36: "Mamma e papà ti vogliono bene",
    37: "Non poggiare il bicchiere colmo d'acqua sul pianoforte",
    38: "Con la bicicletta elettrica le salite sono una passeggiata",
    39: "Saluta la signora e fai l'inchino",
    40: "La teoria dei numeri è una branca della matematica",
    41: "Mio nipote ama trovare soluzioni a problemi complessi",
    42: "Aguzza l'ingegno e progetta una radio intelligente",
    43: "Il giornalaio vende e invia riviste e oggetti turistici",
    44: "Il cane corse forsennatamente verso il padrone calpestando le aiuole",
    45: "Il dolore sorgeva mentre la luna non era ancora tramontata",
    46: "Puoi accendere la radio a caso e sintonizzarti su qualsiasi frequenza",
    47: "Poi ci sono i rimedi naturali che sono più efficaci di tanti prodotti presenti in farmacia",
    48: "Impariamo a meditare giornalmente",
    49: "Si perde così tanto tempo a discutere del niente",
    50: "Stasera andremo al cinema a vedere un film francese",
    51: "Sono belli i programmi decisi all'ultimo momento",
    52: "Con Cristiana pratico yoga ogni mercoledì",
    53: "Pensieri e parole cantava la diva con voce suadente",
    54: "Aprile si esaurisce mentre arriva carico di promesse il mese di maggio",
    55: "Abbiamo trasmesso il giornale radio del mattino",
    56: "Il tempo previsto sull'Italia per questa sera non prevede temperature in aumento",
    57: "Pensavo che tu volessi fare solo uno spuntino",
    58: "Assicurati che non si dimentichino di scrivere alla zia",
    59: "Per salvarci dobbiamo restare uniti",
    60: "Il mondo è nelle nostre mani",
    61: "Comportati educatamente a tavola",
    62: "Pare che sia rimasto solo per un colpo di testa",
    63: "La piccola peste vuole il ciuccio per calmarsi",
    64: "Non mordere la spalla della nonna",
    65: "La carta non si mangia se non sei una capra",
    66: "Il pavone becca le foglie sul viale dello zoo",
    67: "All'improvviso si udì l'urlo del barbagianni",
    68: "Basta con i fanatismi esagerati",
    69: "Non smettere di fantasticare ad occhi aperti",
    70: "Col vento in poppa attraversarono il Mediterraneo in un soffio",
    71: "Voltati e renditi conto di quanta strada hai percorso",
    72: "Una tazza di te verde al giorno rinfresca la mente",
    73: "Scriverò questa lettera con la penna a sfera",
    74: "Che ne pensi di una fetta di torta",
    75: "Il cestino per la carta sta sotto la scrivania",
    76: "Una vacanza in agriturismo in Toscana ha un costo ridotto",
    77: "Sul pavimento del salone giace un tappeto persiano",
    78: "L'albero di cedro è simbolo del Libano",
    79: "Un biglietto di auguri accompagna il regalo",
    80: "Torneresti a casa a piedi",
    81: "Il grano saraceno non contiene glutine",
    82: "Il pane lievita quando la luna è piena",
    83: "Stendi il bucato al sole e risparmi energia",
    84: "Sotto la piazza giace un tesoro",
    85: "La balena blu nuota in solitario",
    86: "Servono nuovi dirigenti per rilanciare le aziende",
    87: "Creare lavoro è un dovere costituzionale",
    88: "Ma questa è un'altra storia su cui si indagherà",
    89: "Si al regolamento che impone limiti alla stupidità",
    90: "La ballerina indossa un costume rosa fragola",
    91: "L'autore si muove con scioltezza nella palude delle parole",
    92: "La fascetta giusta dovrebbe essere alienazione",
    93: "Resti in collegamento che risponderà il primo operatore libero",
    94: "Vediamo se la risposta è quella giusta",
    95: "L'avocado cresce nei paesi tropicali",
    96: "Pesce fritto e insalata mista grazie",
    97: "Favorisce un caffè dopo cena col digestivo",
    98: "La folla era impazzita alla vista dell'assassino",
    99: "Lei col maglione rosso si stia zitto",
    100: "Mangerebbe volentieri un filetto di baccalà con le olive",
}


def sentence_text(sentence_id: int) -> str:
    """Orthographic text for a sentence id (1..100)."""
    try:
        return SENTENCES[sentence_id]
    except KeyError:
        raise KeyError(f"unknown sentence id {sentence_id}; valid ids are 1..100") from None
