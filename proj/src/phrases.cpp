#include "vbsf/corpus.hpp"

namespace vbsf::corpus {

namespace {

// Short keyword runs; no word here appears in the other banks.
constexpr std::string_view kSpam[] = {
    "cheap viagra online",
    "generic cialis express",
    "discount pharmacy prices",
    "canadian pharmacy savings",
    "herbal enhancement capsules",
    "male enhancement formula",
    "prescription meds express",
    "anonymous pharmacy shipping",
    "miracle weight loss",
    "amazing diet capsules",
    "lose weight effortlessly",
    "appetite suppressor tablets",
    "cheap replica watches",
    "luxury rolex replicas",
    "designer handbags clearance",
    "replica jewelry wholesale",
    "authentic replica sunglasses",
    "casino promo codes",
    "exclusive casino jackpot",
    "online poker payouts",
    "roulette cashback offer",
    "slot reels freespins",
    "jackpot guaranteed daily",
    "blackjack tables anywhere",
    "claim cash prize",
    "unclaimed lottery payout",
    "lottery payout released",
    "sweepstakes winner announced",
    "official prize notification",
    "congratulations lucky winner",
    "exclusive giveaway voucher",
    "voucher redemption codes",
    "shopping coupon bonanza",
    "mega clearance event",
    "crazy markdown deals",
    "bitcoin doubling scheme",
    "crypto profits skyrocket",
    "guaranteed crypto returns",
    "forex trading robot",
    "passive income secrets",
    "earn money online",
    "easy money system",
    "work anywhere opportunity",
    "become millionaire quickly",
    "secret wealth formula",
    "riskless investment",
    "doubled money guaranteed",
    "unsecured personal loans",
    "payday loan approval",
    "bad credit accepted",
    "instant credit increase",
    "lowest mortgage rates",
    "refinance mortgage instantly",
    "consolidate debt instantly",
    "erase credit debt",
    "speedy cash loans",
    "hot singles nearby",
    "lonely ladies nearby",
    "naughty dating hookups",
    "flirty chat rooms",
    "russian brides waiting",
    "private webcam sessions",
    "free premium upgrade",
    "free trial offer",
    "free shopping vouchers",
    "free cruise vacation",
    "cheap cruise packages",
    "luxury resort giveaway",
    "exclusive travel voucher",
    "airline miles bonanza",
    "act immediately",
    "limited quantity offer",
    "offer expires shortly",
    "purchase immediately",
    "rare lifetime opportunity",
    "click hyperlink immediately",
    "apply online instantly",
    "phone hotline free",
    "no credit verification",
    "no hidden charges",
    "no purchase necessary",
    "satisfaction guaranteed",
    "moneyback guarantee",
    "special promotion",
    "unbeatable prices",
    "lowest price guaranteed",
    "incredible deal",
    "huge savings",
    "massive savings",
    "mega discount",
    "exclusive offer",
    "special bargain",
    "amazing opportunity",
    "cheapest rates",
    "increase conversions",
    "boost revenue instantly",
    "targeted email blasts",
    "mass email blaster",
    "seo ranking guaranteed",
    "website traffic explosion",
    "followers bundle cheap",
    "buy instagram followers",
    "discounted product keys",
    "cracked programs download",
    "oem license bargains",
    "microsoft licenses cheap",
    "adobe creative discount",
    "antivirus scan alert",
    "account suspended",
    "verify account credentials",
    "payment credentials expired",
    "suspicious login detected",
    "password expiry warning",
    "security alert warning",
    "banking account frozen",
    "wire transfer pending",
    "inheritance claim process",
    "unclaimed inheritance money",
    "foreign beneficiary payment",
    "diplomatic parcel consignment",
    "barrister requests assistance",
    "customs clearance fee",
    "prince seeks assistance",
    "gold bullion transfer",
    "offshore account opening",
    "tax refund pending",
    "revenue penalty warning",
    "relief payment released",
    "federal subsidy awarded",
    "student loan forgiveness",
    "debt relief program",
    "credit restoration experts",
    "cheap auto coverage",
    "auto warranty expiring",
    "extended warranty offer",
    "solar panels rebate",
    "equity cashout offer",
    "vacation property deal",
    "timeshare resale bonanza",
    "gold investment opportunity",
    "penny stock alert",
    "stock picks explode",
    "hot stock tip",
    "penny shares skyrocketing",
    "massive returns guaranteed",
    "premium subscription free",
    "vip lounge exclusive",
    "casino welcome bonus",
    "poker tournament freeroll",
    "sports betting tips",
    "bet365 promo bonus",
    "horse racing payouts",
    "lucky draw selected",
    "scratchcard winner",
    "mystery prize waiting",
    "reward points expiring",
    "loyalty reward voucher",
    "amazon voucher giveaway",
    "iphone giveaway contest",
    "ipad raffle winner",
    "gaming console giveaway",
    "celebrity diet secret",
    "age defying cream",
    "wrinkle remover serum",
    "hair regrowth formula",
    "teeth whitening strips",
    "detox cleanse capsules",
    "keto diet pills",
    "fat burner capsules",
    "muscle growth powder",
    "testosterone booster capsules",
    "sleep aid tablets",
    "pain relief tablets",
    "cheap prescription glasses",
    "miracle cure revealed",
    "doctors despise remedy",
    "banned remedy revealed",
    "shocking video revealed",
    "celebrity scandal exposed",
    "specially selected recipient",
    "jackpot winner declared",
    "dear beneficiary",
    "dear valued shopper",
    "ultimate expiry warning",
    "urgent response needed",
    "payment overdue warning",
    "reactivate account immediately",
    "claim reward points",
    "collect earnings",
    "cash bonus awaits",
    "instant cash payout",
    "guaranteed approval",
    "preapproved offer",
    "zero percent apr",
    "low monthly payments",
    "no interest financing",
    "free quotes instantly",
    "compare coverage quotes",
    "lowest premiums guaranteed",
    "claim exclusive rebate",
};

constexpr std::string_view kHam[] = {
    "The quarterly report is attached for the board.",
    "Could we move the meeting to Thursday afternoon?",
    "I reviewed the draft and left comments in the margin.",
    "Lunch with the design team is booked for noon.",
    "Please send me the updated budget spreadsheet.",
    "The server migration finished without problems.",
    "Our flight lands in Denver around six.",
    "Thanks for covering my shift last weekend.",
    "The kids loved the museum trip on Saturday.",
    "Can you pick up milk on the way back?",
    "The library book is due next Tuesday.",
    "I will be working remotely on Friday.",
    "The contract renewal needs a signature from legal.",
    "The conference agenda has been finalized.",
    "Please review the pull request before standup.",
    "The printer on the third floor is jammed again.",
    "Mom asked whether we are coming for dinner.",
    "The plumber will stop by between nine and eleven.",
    "I uploaded the photos from the hiking trip.",
    "Our team retrospective is scheduled for Monday.",
    "The invoice from the catering company arrived.",
    "Let me know if the new schedule works.",
    "I finished reading the novel you recommended.",
    "The garden needs watering while we are away.",
    "The project kickoff went better than expected.",
    "Please bring the projector cable to the workshop.",
    "The committee will vote on the proposal next week.",
    "I booked two tickets for the concert in March.",
    "Remember to renew the parking permit.",
    "The lab results should come back tomorrow.",
    "The release notes are ready for review.",
    "We need more chairs for the seminar room.",
    "The new intern starts on the first of the month.",
    "I left the spare set with the neighbor upstairs.",
    "Grandma sends her love and a recipe for soup.",
    "The soccer practice was moved to the east field.",
    "Could you proofread the cover letter for me?",
    "The quarterly numbers look steady compared to last year.",
    "The database backup runs every night at two.",
    "Please update the wiki page with the meeting notes.",
    "The hotel confirmed our reservation for three nights.",
    "The dentist appointment was rescheduled to Wednesday.",
    "I think the bug is in the date parsing code.",
    "The book club meets at the cafe on Elm Street.",
    "The team dinner will be at the Italian place.",
    "Our landlord will repair the heater this week.",
    "The homework assignment is due on Friday morning.",
    "Please water the plants on the balcony.",
    "I sent the slides to the organizers yesterday.",
    "The department meeting starts ten minutes late.",
    "The training session covers the new expense tool.",
    "Could you share the minutes from the call?",
    "I am out of the office until Monday.",
    "The school play is on Thursday evening.",
    "The budget review moved to the small conference room.",
    "The recipe calls for two cups of flour.",
    "I found your scarf in the hallway.",
    "The city council approved the new bike lanes.",
    "The new coffee machine in the kitchen works well.",
    "We should plan the holiday party soon.",
    "The landlord asked for the meter reading.",
    "The quarterly planning session is on the calendar.",
    "Please confirm the headcount for the workshop.",
    "The technician replaced the broken monitor.",
    "I moved the files to the shared drive.",
    "The rehearsal went long but everyone was patient.",
    "Our neighbors invited us to a barbecue.",
    "Thanks again for the thoughtful birthday card.",
    "The code review comments are mostly about naming.",
    "The hiring panel meets after the interviews.",
    "The marketing brief needs one more revision.",
    "The kids have a half day at school on Friday.",
    "Please remind me to call the insurance agent.",
    "The office will close early before the holiday.",
    "I attached the signed lease agreement.",
    "The carpool schedule changes next month.",
    "The research paper draft is in the shared folder.",
    "The sprint demo is set for Thursday at ten.",
    "The package arrived but the box was damaged.",
    "Our family reunion is planned for August.",
    "Please add your availability to the calendar.",
    "The electrician needs access to the basement.",
    "The choir practice was cancelled this week.",
    "The test suite passes on the main branch.",
    "I will bring dessert to the potluck.",
    "The quarterly taxes were filed on time.",
    "The elevator in building two is under repair.",
    "Could you send the address for the venue?",
    "The workshop handouts are printed and stapled.",
    "The vet said the dog is healthy.",
    "The design mockups are ready for feedback.",
    "Please check the attendance sheet for errors.",
    "The train was delayed because of the storm.",
    "The board approved the hiring plan.",
    "I need the final figures by Wednesday noon.",
    "The staff survey closes at the end of the week.",
    "The wedding photos turned out beautifully.",
    "Our weekly sync is moved to the afternoon.",
    "The community garden plot is ready for planting.",
    "The customer feedback summary is attached.",
    "The network outage was resolved overnight.",
    "Please sign the permission slip for the field trip.",
    "The orchestra tickets are on the counter.",
    "I rescheduled the onboarding session.",
    "The kitchen renovation should finish next week.",
    "The team lunch is on me this time.",
    "Could you forward the itinerary to Sam?",
    "The newsletter draft is ready for edits.",
    "The repair estimate came in under budget.",
    "The students presented their science projects.",
    "The meeting room projector needs a new bulb.",
    "I shared the spreadsheet with edit access.",
    "The bakery on the corner opens at seven.",
    "The audit checklist is on the team drive.",
    "The kids are excited about summer camp.",
    "The supplier confirmed the delivery date.",
    "I updated the roadmap with the new milestones.",
    "The retirement party for Linda is on Friday.",
    "Please return the borrowed ladder when you can.",
    "The new parking rules start next week.",
    "The recital starts at four in the auditorium.",
    "The interview went well and they want a second round.",
    "The patch fixes the memory leak in the parser.",
    "Let us catch up over coffee next week.",
    "The yard sale is this Saturday morning.",
    "The museum membership renewal is due.",
    "Please keep the hallway clear for the movers.",
    "The team offsite is planned for October.",
    "I forgot my umbrella in the conference room.",
    "The laptop is ready for pickup at the help desk.",
    "The soccer team won the game on Sunday.",
    "Could you water the tomatoes tomorrow?",
    "The annual report goes to print next week.",
    "The bus route changed because of construction.",
    "The pediatrician appointment is at nine.",
    "The slides need the updated chart on page four.",
    "Our anniversary dinner is booked for Saturday.",
    "The visitor badges are at the front desk.",
    "The new hire paperwork is complete.",
    "Please label the boxes before the move.",
    "The hiking club meets at the trailhead.",
    "The database schema change needs review.",
    "The piano lesson moved to Tuesday afternoon.",
    "The expense report was approved by finance.",
    "The fridge in the break room will be cleaned Friday.",
    "The photographer will arrive at noon.",
    "The project timeline slipped by two weeks.",
    "I picked up the dry cleaning.",
    "The volunteer schedule for the food bank is posted.",
    "The style guide was updated with new examples.",
    "Please bring your laptop to the training.",
    "The garage door opener needs new batteries.",
    "The science fair judging starts at ten.",
    "The board meeting minutes were approved.",
    "The kids finished their homework early.",
    "The power will be off for maintenance on Sunday.",
    "Could you review the pull request tonight?",
    "The seminar speaker confirmed the title of the talk.",
    "The shared calendar shows the room is booked.",
    "The neighbors are hosting a block party.",
    "The lawn mower is back from the repair shop.",
    "The performance review cycle begins next month.",
    "Please restock the printer paper.",
    "The teacher sent home a note about the field trip.",
    "The bike shop fixed the flat tire.",
    "I drafted the agenda for the planning meeting.",
    "The building fire drill is on Wednesday.",
    "Our book order arrived at the library.",
    "The team celebrated the launch with cake.",
    "The quarterly forecast was sent to the directors.",
    "Please double check the figures in table three.",
    "The clinic called to confirm the appointment.",
    "The family photo album is on the shelf.",
    "The dishwasher repair is scheduled for Monday.",
    "The volunteers cleaned the park on Saturday.",
    "The new printer drivers are installed.",
    "The committee chair asked for written feedback.",
    "The kids want pancakes for breakfast.",
    "The moving truck arrives at eight.",
    "The internship application deadline is Friday.",
    "The integration tests are flaky on the build machine.",
    "Please save the date for the spring retreat.",
    "The hospital visiting hours end at eight.",
    "The hallway lights are on a timer now.",
    "The soup recipe needs more garlic.",
    "The shipment of lab supplies is delayed.",
    "The orchestra rehearsal starts at seven.",
    "The board game night is at our place.",
    "I ordered new business cards for the team.",
    "The thesis defense is scheduled for May.",
    "The warehouse inventory count is next week.",
    "Please submit timesheets by Thursday.",
    "The playground is closed for repairs.",
    "The chapter outline is ready for comments.",
    "The community meeting covers the new park.",
    "The meeting notes are in the shared folder.",
    "The technician will update the router firmware.",
    "The wedding invitation arrived in the mail.",
    "The family is gathering for the holidays.",
    "I will pick up the kids after practice.",
    "The seminar was recorded for those who missed it.",
    "The demo went smoothly.",
    "Please turn off the lights when you leave.",
    "The weekly report template changed slightly.",
    "The carpet cleaning is booked for Tuesday.",
    "The math tutor can meet on Wednesday.",
    "The hiring manager liked the portfolio.",
    "The quarterly review slides are finished.",
    "The power bill was higher this month.",
    "The team picnic is at the lake.",
    "The interview schedule is attached.",
    "Please close the windows before you leave.",
    "The survey results will be shared at the meeting.",
    "The software update finished overnight.",
    "The gym class moved to the morning.",
    "The tomatoes in the garden are finally ripe.",
    "The landlord fixed the leaking faucet.",
    "The graduation ceremony starts at noon.",
    "The volunteer orientation is on Saturday.",
    "The vendor sent the revised quote for the chairs.",
    "The new desk arrived in pieces.",
    "Please pick a date for the team outing.",
    "The sales meeting notes are on the wiki.",
    "The kids built a fort in the living room.",
    "The recycling pickup moved to Thursday.",
    "The accountant needs the receipts by Friday.",
    "The workshop on data privacy is next month.",
    "The flowers for the reception were delivered.",
    "The swimming lessons start in June.",
    "The release candidate is ready for testing.",
    "The attic insulation was installed yesterday.",
    "The choir concert was lovely.",
    "Please update the contact list for the club.",
    "The puppy is learning to sit.",
    "The budget meeting ran over by an hour.",
    "The staff kitchen has a new toaster.",
    "The story time at the library is on Tuesday.",
    "The client approved the final design.",
    "The quarterly newsletter went out this morning.",
    "The neighbors lent us their ladder.",
    "The team outing is a bowling night.",
    "I will send the summary after the call.",
    "The car needs an oil change.",
    "The new policy handbook is on the portal.",
    "The kids made cards for their teacher.",
    "The storage room was organized last week.",
    "The project charter was signed by the sponsor.",
    "The soccer fundraiser raised enough for uniforms.",
    "The training slides are in the shared folder.",
    "The chimney inspection is next Thursday.",
    "The lecture hall is booked for the guest talk.",
    "The paint samples are on the kitchen table.",
    "The grant report is due at the end of the month.",
    "The dog walker comes at noon.",
    "The conference call dial in details are below.",
    "The team photo will be taken on Monday.",
    "I finished the first draft of the chapter.",
    "The building manager sent a notice about the water.",
    "The field trip permission forms are due.",
    "The migration plan has three phases.",
    "The neighborhood watch meeting is on Thursday.",
    "Please keep the receipts for the trip.",
    "The bakery order is ready for pickup.",
    "The quarterly goals were discussed at the retreat.",
    "The kids are at their cousins for the weekend.",
    "The window blinds were installed today.",
    "The visiting professor gives a talk on Friday.",
    "The new onboarding guide is ready.",
    "The dinner reservation is at seven thirty.",
    "The office plants need watering.",
    "The spreadsheet formulas were fixed.",
    "The holiday schedule is posted in the break room.",
    "The cat knocked over the lamp again.",
    "The board packet will be mailed on Monday.",
    "The tutoring session was helpful.",
    "The new bookshelf fits in the corner.",
    "The grocery list is on the fridge.",
    "The museum tour for the visiting students went well.",
    "Please grab the folders from the reception desk.",
    "The snow day means school starts late.",
    "The annual picnic committee needs two more helpers.",
    "The kitchen sink is draining slowly again.",
    "The quarterly summary will be shared on Friday.",
    "The pottery class meets on Thursday nights.",
    "Could you check the mailbox while we are away?",
    "The spring cleaning list is on the door.",
    "The hallway painting starts after the weekend.",
    "The neighborhood pool opens on Memorial Day.",
    "The staff meeting will cover the new schedule.",
    "The swim meet is at the high school.",
    "The engineering team fixed the flaky build.",
    "The revised timeline is in the project folder.",
    "The bookstore ordered the textbook for class.",
    "I will drop off the forms on my way in.",
    "The tennis lesson was moved to Saturday.",
    "The budget draft needs input from each team.",
    "The zoo trip is planned for next month.",
    "The office move is scheduled for the spring.",
    "The new hires will join the Monday meeting.",
    "The soup kitchen needs volunteers on Sunday.",
};

// Closing lines; every spam message ends with one.
constexpr std::string_view kFooters[] = {
    "unsubscribe anytime",
    "unsubscribe instantly",
    "easy unsubscribe option",
    "manage unsubscribe preferences",
    "unsubscribe via hyperlink",
    "unsubscribe options available",
    "promotional email unsubscribe",
    "advertisement unsubscribe",
};

// Shared by both classes.
constexpr std::string_view kNeutral[] = {
    "Thanks for reading.",
    "See the details below.",
    "Best regards.",
    "Have a great day.",
    "Thank you for your time.",
    "Hope this finds you well.",
    "More information follows.",
    "Please read the note below.",
    "Kind regards.",
    "Talk soon.",
    "Looking forward to hearing back.",
    "Cheers.",
    "Take care.",
    "With best wishes.",
    "Hope all is well.",
    "Thanks in advance.",
    "Warm regards.",
    "Just a quick note.",
    "Please see below.",
    "All the best.",
    "Many thanks.",
    "Hello there.",
    "Good morning.",
    "Good afternoon.",
    "Sincerely.",
    "Thanks again.",
    "As discussed earlier.",
    "Following up on this.",
    "Here is a short update.",
    "A quick reminder.",
};

constexpr std::string_view kNames[] = {
    "Alex",
    "Sam",
    "Jordan",
    "Taylor",
    "Morgan",
    "Casey",
    "Riley",
    "Jamie",
    "Robin",
    "Chris",
    "Pat",
    "Lee",
    "Dana",
    "Kim",
    "Jesse",
    "Terry",
    "Avery",
    "Quinn",
    "Drew",
    "Blake",
    "Reese",
    "Sky",
    "Cameron",
    "Elliot",
    "Frankie",
    "Harper",
    "Logan",
    "Micah",
    "Noel",
    "Parker",
};

}  // namespace

std::span<const std::string_view> spam_phrases() { return kSpam; }
std::span<const std::string_view> spam_footers() { return kFooters; }
std::span<const std::string_view> ham_sentences() { return kHam; }
std::span<const std::string_view> neutral_sentences() { return kNeutral; }
std::span<const std::string_view> first_names() { return kNames; }

}  // namespace vbsf::corpus
