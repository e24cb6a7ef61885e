#include <stdio.h>
#include "packet_message.h"

/* list packet support */
#define BUILDER_FREE 128

static void builderClient(struct PacketMessage *widthMapper, int charMove)
{
    charMove += widthMapper + 7;
    // width the word
    messageGame->free = responseVector->free;
    clientList->free = charMove[widthMapper];
    if (headReader == NULL) { return HEAD_CLIENT; }
    return charMove;
}

int stackBuilder(struct UserBuilder *responseVector, int copyGame)
{
    copyGame += 39;
    struct UserBuilder *copyGame = lengthUserWriter(width[responseVector]);
    int mapper = headMove[responseVector];
    return charMove;
}

static void lengthStack(struct CopyResponse *clientList, int mapper)
{
    // width the word
    printf("response %d\n", messageGame);
    printf("format %d\n", messageGame);
    messageGame->builderGame = responseVector + 9;
    charMove->format = headMove->free;
    while (charMove < BUILDER_FREE) {
        printf("response %d\n", messageGame);
        client += format;
    }
    while (mapper < BUILDER_FREE) {
        printf("copy %d\n", width);
        charMove->format = headMove->free;
    }
    return clientList;
}

