#!/usr/bin/env python3
"""Regenerate the end-to-end pipeline fixture under tests/fixtures/pipeline.

Pages are built from the line-aligned sentences in tests/fixtures/corpus and
laid out the way three common repository front ends do it: Dublin Core meta
tags, a labelled metadata table, and a DSpace full item view with language
cells. Output is deterministic.

    python3 tools/make_fixture_pages.py tests/fixtures
"""

import html
import json
import os
import sys

TOPICS = [  # (first line, last line) in the corpus files, 1-based
    (1, 30), (31, 60), (61, 90), (91, 120), (121, 159),
]
RECORD_LINES = 5

IPB = "bibliotecadigital-ipb-pt"
DIAL = "dial-uclouvain-be"
UNAL = "repositorio-unal-co"

CONFIGS = {
    IPB: {
        "abstracts_regex": "^DCTERMS\\.abstract$",
        "abstracts_min_len": 20,
        "titles_regex": "^DC\\.title$",
        "titles_min_len": 20,
        "keywords_regex": "^DC\\.subject$",
        "authors_regex": "^DC\\.creator$",
        "publishers_regex": "^DC\\.publisher$",
        "date_available_regex": "^DCTERMS\\.available$",
        "journal_regex": "^citation_journal_title$",
        "bibliographic_citation_regex": "^DCTERMS\\.bibliographicCitation$",
        "document_language_regex": "^DC\\.language$",
        "link_html_regex": "^citation_abstract_html_url$",
        "link_pdf_regex": "^citation_pdf_url$",
        "document_type_regex": "^DC\\.type$",
        "license_regex": "^DC\\.rights$",
        "URI_regex": "^DC\\.identifier$",
        "targeted_langs": ["en", "es", "pt", "fr"],
    },
    DIAL: {
        "abstracts_regex": ".*publication-metadata.*",
        "abstracts_min_len": 20,
        "titles_regex": ".*citation_title.*",
        "titles_min_len": 20,
        "keywords_regex": ".*Keywords.*",
        "authors_regex": ".*citation_author.*",
        "publishers_regex": ".*Affiliation.*|.*Publisher.*",
        "date_available_regex": ".*Publication date.*|.*Defense date.*",
        "journal_regex": ".*citation_journal_title.*|.*citation_dissertation_institution.*",
        "bibliographic_citation_regex": ".*Bibliographic reference.*",
        "document_language_regex": ".*Language.*",
        "link_html_regex": ".*Permanent URL.*",
        "link_pdf_regex": ".*citation_pdf_url.*",
        "document_type_regex": ".*Document type.*",
        "license_regex": ".*Access type.*",
        "URI_regex": ".*Permanent URL.*",
        "targeted_langs": ["en", "es", "pt", "fr"],
    },
    UNAL: {
        "abstracts_regex": "^dc\\.description\\.abstract$",
        "abstracts_min_len": 20,
        "titles_regex": "^dc\\.title(\\.translated)?$",
        "titles_min_len": 20,
        "keywords_regex": "^dc\\.subject(\\.proposal)?$",
        "authors_regex": "^dc\\.contributor\\.author$",
        "publishers_regex": "^dc\\.publisher(\\.department)?$",
        "date_available_regex": "^dc\\.date\\.available$",
        "journal_regex": "^dc\\.relation\\.ispartofjournal$",
        "bibliographic_citation_regex": "^dc\\.identifier\\.citation$",
        "document_language_regex": "^dc\\.language\\.iso$",
        "link_html_regex": "^dc\\.identifier\\.url$",
        "link_pdf_regex": "^citation_pdf_url$",
        "document_type_regex": "^dc\\.type$",
        "license_regex": "^dc\\.rights\\.accessrights$",
        "URI_regex": "^dc\\.identifier\\.uri$",
        "targeted_langs": ["en", "es", "pt"],
    },
}

KEYWORDS = {
    0: ["Oncology", "Breast cancer", "Clinical outcomes"],
    1: ["Renewable energy", "Power systems", "Policy"],
    2: ["Urban mobility", "Public transit", "Logistics"],
    3: ["Neuroscience", "Synaptic plasticity", "Cognition"],
    4: ["Higher education", "Social sciences", "Methodology"],
}

APPENDIX_RECORD = {
    "id": 14638,
    "title_en": "The development ways of renewable energy: the economic and financial performance "
                "of firms in this sector in Armenia and OECD countries",
    "abstract_en": "In this research is intended to analyse the expansion of the economic sector related "
                   "to the development ways of renewable energy and the economic and financial "
                   "performance of companies operating in this field.",
    "abstract_pt": "Esta investigação pretende analisar a expansão do setor económico relacionado com o "
                   "desenvolvimento das energias renováveis e os desempenhos económico e financeiro "
                   "das empresas que operam nesse setor.",
    "keywords": ["Renewable energy (RE)", "Financial data", "Financial ratios", "Market price",
                 "Environment", "Domínio/Área Científica::Ciências Sociais::Economia e Gestão"],
    "author": "Tarakhchyan, Siranush",
    "date": "2017-11-20T15:08:42Z",
}


def e(s):
    return html.escape(s, quote=True)


def read_corpus(root):
    out = {}
    for lang in ("en", "es", "fr", "pt"):
        with open(os.path.join(root, "corpus", lang + ".txt"), encoding="utf-8") as f:
            out[lang] = [line.rstrip("\n") for line in f]
    return out


def as_title(sentence):
    return sentence[:-1] if sentence.endswith(".") else sentence


def ipb_page(rec):
    meta = [
        '<meta charset="utf-8">',
        '<title>%s</title>' % e(rec["titles"].get("en", "Record")),
        '<link rel="schema.DC" href="http://purl.org/dc/elements/1.1/">',
    ]
    for lang, t in rec["titles"].items():
        meta.append('<meta name="DC.title" content="%s" xml:lang="%s">' % (e(t), lang))
    for lang, a in rec["abstracts"].items():
        meta.append('<meta name="DCTERMS.abstract" content="%s" xml:lang="%s">' % (e(a), lang))
    for k in rec["keywords"]:
        meta.append('<meta name="DC.subject" content="%s">' % e(k))
    meta.append('<meta name="DC.creator" content="%s">' % e(rec["author"]))
    meta.append('<meta name="DC.publisher" content="Instituto Politécnico de Bragança">')
    meta.append('<meta name="DCTERMS.available" content="%s">' % rec["date"])
    meta.append('<meta name="DC.language" content="%s">' % rec["doc_lang"])
    meta.append('<meta name="DC.type" content="masterThesis">')
    meta.append('<meta name="DC.rights" content="openAccess">')
    meta.append('<meta name="DC.identifier" content="http://hdl.handle.net/10198/%d">' % rec["id"])
    meta.append('<meta name="citation_abstract_html_url" '
                'content="https://bibliotecadigital.ipb.pt/handle/10198/%d">' % rec["id"])
    meta.append('<meta name="citation_pdf_url" '
                'content="https://bibliotecadigital.ipb.pt/bitstream/10198/%d/1/thesis.pdf">' % rec["id"])
    meta.append('<link rel="license" href="http://creativecommons.org/licenses/by-nc/4.0/">')
    body = ('<body><div id="ds-main"><h1>%s</h1><p class="item-summary">Item %d</p></div></body>'
            % (e(rec["titles"].get("en", "Record")), rec["id"]))
    return "<!DOCTYPE html>\n<html>\n<head>\n" + "\n".join(meta) + "\n</head>\n" + body + "\n</html>\n"


def dial_page(rec):
    head = ['<meta charset="utf-8">', "<title>DIAL</title>"]
    for lang, t in rec["titles"].items():
        head.append('<meta name="citation_title" content="%s" lang="%s">' % (e(t), lang))
    head.append('<meta name="citation_author" content="%s">' % e(rec["author"]))
    head.append('<meta name="citation_dissertation_institution" content="UCLouvain">')
    head.append('<meta name="citation_pdf_url" content="https://dial.uclouvain.be/downloader/%d.pdf">' % rec["id"])
    paras = "".join('<p lang="%s">%s</p>' % (lang, e(a)) for lang, a in rec["abstracts"].items())
    kws = "".join("<span>%s</span>" % e(k) for k in rec["keywords"])
    url = "http://hdl.handle.net/2078.1/%d" % rec["id"]
    rows = [
        ("Keywords", kws),
        ("Affiliation", "UCL - Faculté des sciences"),
        ("Publication date", rec["date"][:10]),
        ("Language", {"en": "English", "fr": "Français"}.get(rec["doc_lang"], rec["doc_lang"])),
        ("Document type", "Mémoire (Master thesis)"),
        ("Access type", "Accès libre"),
        ("Permanent URL", '<a href="%s">%s</a>' % (url, url)),
        ("Bibliographic reference", e("%s. UCLouvain, %s." % (rec["author"], rec["date"][:4]))),
    ]
    table = "".join("<tr><th>%s</th><td>%s</td></tr>" % (k, v) for k, v in rows)
    return ("<!DOCTYPE html>\n<html>\n<head>\n" + "\n".join(head) + "\n</head>\n<body>\n"
            '<div class="publication-metadata">' + paras + "</div>\n"
            "<table class=\"details\">" + table + "</table>\n</body>\n</html>\n")


def unal_page(rec):
    rows = []
    for lang, t in rec["titles"].items():
        key = "dc.title" if lang == rec["doc_lang"] else "dc.title.translated"
        rows.append((key, e(t), lang))
    rows.append(("dc.contributor.author", e(rec["author"]), ""))
    rows.append(("dc.date.available", rec["date"], ""))
    for lang, a in rec["abstracts"].items():
        rows.append(("dc.description.abstract", e(a), "" if rec.get("unmarked") else lang))
    for k in rec["keywords"]:
        rows.append(("dc.subject.proposal", e(k), ""))
    rows.append(("dc.identifier.uri", "https://repositorio.unal.edu.co/handle/unal/%d" % rec["id"], ""))
    rows.append(("dc.language.iso", rec["doc_lang"], ""))
    rows.append(("dc.publisher", "Universidad Nacional de Colombia", ""))
    rows.append(("dc.rights.accessrights", "info:eu-repo/semantics/openAccess", ""))
    rows.append(("dc.type", "Trabajo de grado - Maestría", ""))
    table = "\n".join('<tr><td class="label-cell">%s</td><td class="word-break">%s</td><td>%s</td></tr>'
                      % r for r in rows)
    return ("<!DOCTYPE html>\n<html lang=\"es\">\n<head><meta charset=\"utf-8\"><title>Repositorio UNAL</title>"
            '<meta name="citation_pdf_url" content="https://repositorio.unal.edu.co/bitstream/%d.pdf">'
            "</head>\n<body>\n<table class=\"ds-includeSet-table detailtable\">\n%s\n</table>\n</body>\n</html>\n"
            % (rec["id"], table))


def build_records(corpus):
    records = []
    n = 0
    for topic, (first, last) in enumerate(TOPICS):
        lines = list(range(first - 1, last))
        chunks = [lines[i:i + RECORD_LINES] for i in range(0, len(lines), RECORD_LINES)]
        for chunk in chunks:
            repo = (IPB, DIAL, UNAL)[n % 3]
            target = {IPB: ["pt"], DIAL: ["fr"], UNAL: ["es"]}[repo]
            if repo == UNAL and n % 2 == 0:
                target = ["es", "pt"]
            langs = ["en"] + target
            if n in (7, 23):
                langs = ["en"]
            elif n == 13:
                langs = target
            rec = {
                "repo": repo,
                "id": 1000 + 17 * n,
                "titles": {l: as_title(corpus[l][chunk[0]]) for l in langs},
                "abstracts": {l: " ".join(corpus[l][i] for i in chunk[1:]) for l in langs},
                "keywords": KEYWORDS[topic],
                "author": "Author %02d, Test" % n,
                "date": "20%02d-0%d-1%dT10:00:00Z" % (10 + n % 12, 1 + n % 9, n % 10),
                "doc_lang": langs[-1] if repo != DIAL else "en",
                "unmarked": repo == UNAL and n % 4 == 1,
            }
            records.append(rec)
            n += 1
    a = APPENDIX_RECORD
    records.append({
        "repo": IPB, "id": a["id"], "titles": {"en": a["title_en"]},
        "abstracts": {"en": a["abstract_en"], "pt": a["abstract_pt"]},
        "keywords": a["keywords"], "author": a["author"], "date": a["date"], "doc_lang": "en",
    })
    return records


def main(root):
    corpus = read_corpus(root)
    out = os.path.join(root, "pipeline")
    for repo, cfg in CONFIGS.items():
        path = os.path.join(out, "configs", repo + ".json")
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(cfg, f, indent=4, ensure_ascii=False)
            f.write("\n")
    render = {IPB: ipb_page, DIAL: dial_page, UNAL: unal_page}
    for rec in build_records(corpus):
        path = os.path.join(out, "repos", rec["repo"], "%d.html" % rec["id"])
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(render[rec["repo"]](rec))
    # A page that fails extraction and one that is not a record page.
    with open(os.path.join(out, "repos", DIAL, "999999.html"), "w") as f:
        pass
    with open(os.path.join(out, "repos", DIAL, "index.html"), "w") as f:
        f.write("<html><body>listing</body></html>\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures")
