#!/usr/bin/env python3
# Copyright 2026 The viramkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates tests/data/benchmark54.tsv.

Rows V01-V06 are published benchmark examples. The rest are synthetic
sentences built to give every punctuation type at least one row.
"""

import itertools
import sys

REAL = [
    ("As the machine develops the forms we use to record data from past projects will be amended.",
     "As the machine develops, the forms we use to record data from past projects will be amended.",
     "जसजशी यंत्रणा विकसित होईल, तसतसे मागील प्रकल्पांतील डेटा रेकॉर्ड करण्यासाठी आम्ही वापरत असलेले फॉर्म्स सुधारित केले जातील.",
     "Comma"),
    ("What we see, we believe what we hear, we register",
     "What we see, we believe; what we hear, we register",
     "जे पाहतो, त्यावर विश्वास ठेवतो; जे ऐकतो, त्याची नोंद घेतो.",
     "Semi Colon"),
    ("These are the components required motor brushes, bearings, and wiring.",
     "These are the components required: motor brushes, bearings, and wiring.",
     "आवश्यक असलेले घटक खालीलप्रमाणे आहेत: मोटार ब्रशेस, बेअरिंग्ज आणि वायरिंग.",
     "Colon"),
    ("Police say suspect confessed lawyer denies claim",
     "Police say suspect confessed, lawyer denies claim.",
     "पोलिसांनी सांगितले की संशयिताने कबुली दिली, वकील दावा नाकारतो.",
     "Comma"),
    ("Minister says reform failed opposition celebrates",
     "Minister says reform failed, opposition celebrates.",
     "मंत्री म्हणतात की सुधारणा अयशस्वी झाल्या, विरोधक जल्लोष करतात.",
     "Comma"),
    ("Check pressure gauge periodically raise pressure if below operable",
     "Check pressure gauge periodically, raise pressure if below operable.",
     "दाब मोजमाप वेळोवेळी तपासा, जर चालण्याजोगा दाब कमी असेल तर दाब वाढवा.",
     "Comma"),
]

INTROS = [
    ("After dinner", "रात्रीच्या जेवणानंतर"),
    ("In the morning", "सकाळी"),
    ("Before the meeting", "बैठकीपूर्वी"),
    ("During the storm", "वादळादरम्यान"),
    ("At the station", "स्थानकावर"),
    ("On Monday", "सोमवारी"),
]
CLAUSES = [
    ("the children played outside.", "मुले बाहेर खेळली."),
    ("the teacher checked the papers.", "शिक्षकांनी उत्तरपत्रिका तपासल्या."),
    ("my brother called the doctor.", "माझ्या भावाने डॉक्टरांना फोन केला."),
    ("the farmers opened the gates.", "शेतकऱ्यांनी दरवाजे उघडले."),
    ("the workers repaired the road.", "कामगारांनी रस्ता दुरुस्त केला."),
    ("the guests left quietly.", "पाहुणे शांतपणे निघून गेले."),
]

OTHERS = [
    ("Pack these items rice, lentils, and oil.", "Pack these items: rice, lentils, and oil.",
     "या वस्तू बांधा: तांदूळ, डाळ आणि तेल.", "Colon"),
    ("She had one goal to win the race.", "She had one goal: to win the race.",
     "तिचे एकच ध्येय होते: शर्यत जिंकणे.", "Colon"),
    ("He is a well known writer.", "He is a well-known writer.",
     "ते एक सुप्रसिद्ध लेखक आहेत.", "Hyphen"),
    ("We bought a little used car.", "We bought a little-used car.",
     "आम्ही क्वचितच वापरलेली गाडी विकत घेतली.", "Hyphen"),
    ("They hired twenty five workers.", "They hired twenty-five workers.",
     "त्यांनी पंचवीस कामगार कामावर ठेवले.", "Hyphen"),
    ("The rain stopped the match resumed.", "The rain stopped; the match resumed.",
     "पाऊस थांबला; सामना पुन्हा सुरू झाला.", "Semi Colon"),
    ("The river the longest in the state flooded.", "The river (the longest in the state) flooded.",
     "नदीला (राज्यातील सर्वात लांब नदी) पूर आला.", "Parentheses"),
    ("Call me after six tomorrow.", "Call me (after six) tomorrow.",
     "मला उद्या (सहा नंतर) फोन कर.", "Parentheses"),
    ("The sign said no parking here.", "The sign said \"no parking here\".",
     "फलकावर \"येथे पार्किंग नाही\" असे लिहिले होते.", "Quotation Marks"),
    ("Mother said eat first.", "Mother said \"eat first\".",
     "आई म्हणाली \"आधी जेव\".", "Quotation Marks"),
    ("The results were clear we had lost.", "The results were clear — we had lost.",
     "निकाल स्पष्ट होते — आम्ही हरलो होतो.", "Em Dash"),
    ("You finished the work.", "You finished the work?",
     "तू काम पूर्ण केलेस?", "Question Mark"),
    ("Did the bus leave", "Did the bus leave?",
     "बस निघून गेली का?", "Question Mark"),
    ("Bring a pen pencil to the exam.", "Bring a pen/pencil to the exam.",
     "परीक्षेला पेन/पेन्सिल आणा.", "Slash"),
]


def main():
    rows = list(REAL)
    for (ie, im), (ce, cm) in itertools.islice(itertools.product(INTROS, CLAUSES), 34):
        rows.append((f"{ie} {ce}", f"{ie}, {ce}", f"{im}, {cm}", "Comma"))
    rows.extend(OTHERS)
    assert len(rows) == 54, len(rows)
    out = sys.stdout
    out.write("id\tenglish_written\tenglish_meant\tmarathi_meant\tpunctuation_type\n")
    for i, row in enumerate(rows, 1):
        out.write(f"V{i:02d}\t" + "\t".join(row) + "\n")


if __name__ == "__main__":
    main()
